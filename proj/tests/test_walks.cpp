#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwalk/generators.hpp"
#include "pwalk/parse.hpp"
#include "pwalk/walk.hpp"
#include "support.hpp"

using namespace pwalk;

namespace {

using LL = long long;
using Mat = std::vector<std::vector<LL>>;

// Matrix power oracle in plain integers.
std::vector<LL> mat_pow_apply(const Mat& g, unsigned n, std::vector<LL> v) {
  for (unsigned k = 0; k < n; ++k) {
    std::vector<LL> w(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i] += g[i][j] * v[j];
    v = w;
  }
  return v;
}

std::vector<Integer> ints(std::initializer_list<long> l) {
  std::vector<Integer> out;
  for (long x : l) out.push_back(Integer(x));
  return out;
}

Walk bogolubov_sq() { return bogolubov_walk(parse_poly("y^2", {"y"})); }

}  // namespace

TEST_CASE("walk_apply: n = 0 is the identity") {
  std::mt19937_64 rng(1);
  for (const auto& s : testing::walk_zoo3()) {
    const auto v = testing::random_vector(rng, 3);
    CHECK(walk_apply(s, Integer(0), v) == v);
  }
}

TEST_CASE("walk_apply: Bogolubov walk by direct arithmetic") {
  const auto s = bogolubov_sq();
  CHECK(walk_apply(s, Integer(3), ints({3, 3})) == ints({30, 6}));
  for (long n = 0; n < 12; ++n)
    for (long x = -3; x <= 3; ++x)
      for (long y = -3; y <= 3; ++y)
        CHECK(walk_apply(s, Integer(n), ints({x, y})) == ints({x + 2 * y * n + n * n, y + n}));
}

TEST_CASE("walk_apply: unipotent walk matches the matrix power") {
  const auto s = unipotent_walk(IntMatrix{{1, 1}, {0, 1}});
  CHECK(walk_apply(s, Integer(5), ints({1, 2})) == ints({11, 2}));
  const Mat g{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}};
  const auto s3 = unipotent_walk(IntMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  for (unsigned n = 0; n < 15; ++n) {
    const auto expect = mat_pow_apply(g, n, {2, -1, 3});
    CHECK(walk_apply(s3, Integer(n), ints({2, -1, 3})) == ints({long(expect[0]), long(expect[1]), long(expect[2])}));
  }
  CHECK_THROWS_AS(walk_apply(s, Integer(1), ints({1})), WalkError);
  CHECK_THROWS_AS(walk_apply(s, Integer(-1), ints({1, 2})), WalkError);
}

TEST_CASE("walk construction rejects bad walks") {
  const std::vector<std::string> u{"t", "x"};
  CHECK_THROWS_AS(Walk("t", {"x"}, {parse_poly("x + t/2", u)}), WalkError);
  CHECK_THROWS_AS(Walk("t", {"x"}, {parse_poly("x + 1 + t", u)}), WalkError);
  CHECK_NOTHROW(Walk("t", {"x"}, {parse_poly("x + (t^2 - t)/2", u)}));
}

TEST_CASE("walk_compose: examples") {
  const auto s = unipotent_walk(IntMatrix{{1, 1}, {0, 1}});
  CHECK(walk_compose(s, Walk::identity({"x", "y"})) == s);
  const auto ss = walk_compose(s, s);
  const auto& u = ss.universe();
  CHECK(ss.entry(0) == parse_poly("x + 2*t*y", u));
  CHECK(ss.entry(1) == parse_poly("y", u));
  const auto w = xy_minus_P_walks(parse_poly("z^2", {"z"}));
  const auto c = walk_compose(w.s1, w.s2);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto v = testing::random_vector(rng, 3);
    CHECK(walk_apply(c, Integer(0), v) == v);
  }
  CHECK_THROWS_AS(walk_compose(s, w.s1), WalkError);
}

TEST_CASE("walk_reparam: examples") {
  const auto s = unipotent_walk(IntMatrix{{1, 1}, {0, 1}});
  CHECK(walk_reparam(s, 1) == s);
  const auto s2 = walk_reparam(s, 2);
  CHECK(s2.entry(0) == parse_poly("x + t^2*y", s2.universe()));
  const auto b3 = walk_reparam(bogolubov_sq(), 3);
  CHECK(b3.entry(0) == parse_poly("x + 2*y*t^3 + t^6", b3.universe()));
  CHECK_THROWS_AS(walk_reparam(s, 0), WalkError);
}

TEST_CASE("composition and reparametrization batteries") {
  std::mt19937_64 rng(23);
  const auto zoo = testing::walk_zoo3();
  std::uniform_int_distribution<std::size_t> pick(0, zoo.size() - 1);
  std::uniform_int_distribution<long> nn(0, 7);
  std::uniform_int_distribution<std::uint32_t> ll(1, 3);
  for (int i = 0; i < 100; ++i) {
    const auto& a = zoo[pick(rng)];
    const auto& b = zoo[pick(rng)];
    const Integer n(nn(rng));
    const auto v = testing::random_vector(rng, 3);
    CHECK(walk_apply(walk_compose(a, b), n, v) == walk_apply(a, n, walk_apply(b, n, v)));
    const std::uint32_t ell = ll(rng);
    Integer npow;
    mpz_pow_ui(npow.get_mpz_t(), n.get_mpz_t(), ell);
    CHECK(walk_apply(walk_reparam(a, ell), n, v) == walk_apply(a, npow, v));
  }
}

TEST_CASE("composed walks keep the identity-at-zero invariant") {
  const auto zoo = testing::walk_zoo3();
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    const auto w = walk_reparam(walk_compose(zoo[i], zoo[(i + 3) % zoo.size()]), 2);
    for (std::size_t j = 0; j < w.dim(); ++j) {
      const auto at0 = substitute(w.entry(j), {{w.time_var(), MPoly::constant(0)}});
      CHECK(at0 == MPoly::variable(w.coords()[j], w.universe()).with_vars(at0.vars()));
    }
  }
}

TEST_CASE("scaling certificate: examples") {
  CHECK(walk_scaling_certificate(Walk::identity({"x", "y"})).holds);
  const auto b = bogolubov_sq();
  CHECK(walk_scaling_certificate(b).holds);
  const auto img = walk_apply(b, Integer(3), ints({3, 3}));
  CHECK(img == ints({30, 6}));
  CHECK(img[0] % 3 == 0);
  CHECK(img[1] % 3 == 0);
}

TEST_CASE("scaling certificate reports a constant term") {
  const std::vector<std::string> u{"t", "x"};
  const auto cert = constant_term_check({parse_poly("x + 1", u)});
  CHECK_FALSE(cert.holds);
  REQUIRE(cert.offending_entry);
  CHECK(*cert.offending_entry == 0);
  CHECK(cert.offending_constant == 1);
  CHECK(constant_term_check({parse_poly("x + t*x", u)}).holds);
}

TEST_CASE("scaling divisibility battery") {
  std::mt19937_64 rng(31);
  const auto zoo = testing::walk_zoo3();
  std::uniform_int_distribution<std::size_t> pick(0, zoo.size() - 1);
  std::uniform_int_distribution<long> kk(1, 20), nn(0, 50);
  for (int i = 0; i < 100; ++i) {
    const auto& s = zoo[pick(rng)];
    REQUIRE(walk_scaling_certificate(s, i).holds);
    const long k = kk(rng);
    auto v = testing::random_vector(rng, 3);
    for (auto& c : v) c *= k;
    const auto img = walk_apply(s, Integer(k * nn(rng)), v);
    for (const auto& c : img) CHECK(c % k == 0);
  }
}

TEST_CASE("walk_dilate is S(k n)") {
  const auto b = bogolubov_sq();
  const auto d = walk_dilate(b, Integer(3));
  for (long n = 0; n < 6; ++n) CHECK(walk_apply(d, Integer(n), ints({1, 2})) == walk_apply(b, Integer(3 * n), ints({1, 2})));
}

TEST_CASE("preserves: examples") {
  const auto w = xy_minus_P_walks(parse_poly("z^2", {"z"}));
  CHECK(preserves(parse_poly("x^3 - y*z", {"x", "y", "z"}), Walk::identity({"x", "y", "z"})));
  CHECK(preserves(w.form, w.s1));
  CHECK(preserves(w.form, w.s2));
  CHECK(preserves(parse_poly("x - y^2", {"x", "y"}), bogolubov_sq()));
  CHECK_FALSE(preserves(parse_poly("x", {"x", "y"}), bogolubov_sq()));
}

TEST_CASE("preserves agrees with evaluation on a grid") {
  const auto w = xy_minus_P_walks(parse_poly("2*z^2 - 3*z^3", {"z"}));
  std::mt19937_64 rng(8);
  REQUIRE(preserves(w.form, w.s1));
  for (int i = 0; i < 40; ++i) {
    const auto v = testing::random_vector(rng, 3);
    const Integer n(i % 9);
    const auto img = walk_apply(w.s1, n, v);
    const std::vector<Rational> a{v[0], v[1], v[2]}, b{img[0], img[1], img[2]};
    CHECK(evaluate(w.form, a) == evaluate(w.form, b));
  }
}

TEST_CASE("serialize round trip") {
  for (const auto& s : testing::walk_zoo3()) CHECK(Walk::deserialize(s.serialize()) == s);
  CHECK_THROWS_AS(Walk::deserialize("walk 2\ntime t\ncoords x y\nx\n"), WalkError);
}

TEST_CASE("walk_orbit is the symbolic image") {
  const auto o = walk_orbit(bogolubov_sq(), ints({0, 0}));
  CHECK(o[0] == parse_poly("n^2", o.vars()));
  CHECK(o[1] == parse_poly("n", o.vars()));
}
