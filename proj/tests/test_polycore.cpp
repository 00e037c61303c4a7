#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwalk/integer_valued.hpp"
#include "pwalk/mpoly.hpp"
#include "pwalk/parse.hpp"
#include "support.hpp"

using namespace pwalk;
using pwalk::testing::random_poly;

namespace {

// Independent evaluator: walks the term map with plain rational products.
Rational naive_eval(const MPoly& p, const std::vector<Rational>& pt) {
  Rational acc = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) m *= pt[i];
    acc += m;
  }
  return acc;
}

}  // namespace

TEST_CASE("parse: additive identity") {
  const auto p = parse_poly("x + 0", {"x"});
  CHECK(p == MPoly::variable("x", {"x"}));
}

TEST_CASE("parse: binomial expansion against integer arithmetic") {
  const std::vector<std::string> u{"n", "x", "z"};
  const auto p = parse_poly("(z + n*x)^2 - z^2", u);
  // oracle: 2 z n x + n^2 x^2, checked on a grid with long arithmetic
  for (long n = -4; n <= 4; ++n)
    for (long x = -4; x <= 4; ++x)
      for (long z = -4; z <= 4; ++z)
        CHECK(evaluate(p, std::vector<Rational>{n, x, z}) == Rational(2 * z * n * x + n * n * x * x));
  CHECK(p.size() == 2);
  CHECK(p.total_degree() == 4);
}

TEST_CASE("parse: errors") {
  CHECK_THROWS_AS(parse_poly("x ^ y", {"x", "y"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x + w", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x^-1", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("(x + 1", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x / 0", {"x"}), ParseError);
  try {
    parse_poly("x + * 2", {"x"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("parse: unary minus binds looser than power") {
  const std::vector<std::string> u{"x"};
  CHECK(parse_poly("-x^2", u) == -(MPoly::variable("x", u).pow(2)));
  CHECK(parse_poly("--x", u) == MPoly::variable("x", u));
  CHECK(parse_poly("3/2*x", u) == MPoly::variable("x", u).scaled(Rational(3, 2)));
}

TEST_CASE("print: canonical text") {
  const std::vector<std::string> u{"x", "y"};
  CHECK(parse_poly("y*x + x^2 - 3/2", u).to_string() == "x^2 + x*y - 3/2");
  CHECK(MPoly(u).to_string() == "0");
  CHECK(parse_poly("-x", u).to_string() == "-x");
}

TEST_CASE("parse/print round trip on random polynomials") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> u{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    const auto p = random_poly(rng, u, 4, 5);
    CHECK(parse_poly(p.to_string(), u) == p);
  }
}

TEST_CASE("ring axioms hold structurally") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> u{"x", "y", "z"};
  for (int i = 0; i < 60; ++i) {
    const auto a = random_poly(rng, u, 3, 4), b = random_poly(rng, u, 3, 4), c = random_poly(rng, u, 3, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("canonical form: no zero coefficients, lowest terms") {
  std::mt19937_64 rng(6);
  const std::vector<std::string> u{"x", "y"};
  for (int i = 0; i < 50; ++i) {
    const auto p = random_poly(rng, u, 3, 6) * random_poly(rng, u, 2, 3);
    for (const auto& [e, c] : p.terms()) {
      CHECK(c != 0);
      CHECK(c.get_den() > 0);
      Rational copy = c;
      copy.canonicalize();
      CHECK(copy == c);
    }
  }
}

TEST_CASE("substitute: power rule and zero binding") {
  const std::vector<std::string> t{"t"};
  const std::vector<std::string> n{"n"};
  const MPoly p = MPoly::variable("t", t).pow(2);
  CHECK(substitute(p, {{"t", MPoly::variable("n", n).pow(3)}}) == MPoly::variable("n", n).pow(6));
  CHECK(substitute(MPoly::variable("t", t), {{"t", MPoly::constant(0)}}).is_zero());
}

TEST_CASE("substitute: x y - z^2 is invariant under the z^2 symmetry") {
  const std::vector<std::string> u{"n", "x", "y", "z"};
  const auto F = parse_poly("x*y - z^2", {"x", "y", "z"});
  const auto r = substitute(F, {{"x", parse_poly("x", u)},
                                {"y", parse_poly("y + 2*z*n + x*n^2", u)},
                                {"z", parse_poly("z + n*x", u)}});
  CHECK((r - F.with_vars(r.vars())).is_zero());
}

TEST_CASE("substitute: collision with a retained variable is rejected") {
  const std::vector<std::string> u{"x", "y"};
  const auto p = parse_poly("x + y", u);
  CHECK_THROWS_AS(substitute(p, {{"x", parse_poly("y", u)}}), PolyError);
}

TEST_CASE("substitute commutes with evaluation") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> u{"x", "y"};
  const std::vector<std::string> w{"s", "t"};
  for (int i = 0; i < 80; ++i) {
    const auto p = random_poly(rng, u, 3, 4);
    const auto bx = random_poly(rng, w, 2, 3), by = random_poly(rng, w, 2, 3);
    const auto r = substitute(p, {{"x", bx}, {"y", by}});
    const std::vector<Rational> pt{testing::random_rational(rng), testing::random_rational(rng)};
    Point named{{"s", pt[0]}, {"t", pt[1]}};
    Point inner{{"x", evaluate(bx, named)}, {"y", evaluate(by, named)}};
    CHECK(evaluate(r, named) == evaluate(p, inner));
  }
}

TEST_CASE("evaluate: examples and errors") {
  const std::vector<std::string> u{"n", "x", "z"};
  CHECK(evaluate(parse_poly("2*z*n + x*n^2", u), Point{{"n", 1}, {"x", 1}, {"z", 0}}) == 1);
  CHECK(evaluate(parse_poly("n^2 - n", {"n"}), Point{{"n", 7}}) == 42);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    auto p = random_poly(rng, u, 3, 4);
    p = p - MPoly::constant(p.constant_term(), u);
    CHECK(evaluate(p, std::vector<Rational>{0, 0, 0}) == 0);
  }
  CHECK_THROWS_AS(evaluate(parse_poly("n + x", u), Point{{"n", 1}}), PolyError);
}

TEST_CASE("evaluate agrees with the naive term walk") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> u{"a", "b", "c"};
  for (int i = 0; i < 50; ++i) {
    const auto p = random_poly(rng, u, 4, 6);
    const std::vector<Rational> pt{testing::random_rational(rng), testing::random_rational(rng),
                                   testing::random_rational(rng)};
    CHECK(evaluate(p, pt) == naive_eval(p, pt));
  }
}

TEST_CASE("univariate evaluator matches generic evaluation") {
  const auto p = parse_poly("(n^3 + 3*n^2 + 2*n)/6", {"n"});
  const UnivariateEvaluator ev(p);
  for (long n = -20; n <= 20; ++n) {
    CHECK(ev(Integer(n)) == evaluate(p, std::vector<Rational>{n}));
    CHECK(Rational(ev.integer_at(Integer(n))) == evaluate(p, std::vector<Rational>{n}));
  }
  CHECK_THROWS_AS(UnivariateEvaluator(parse_poly("n/2", {"n"})).integer_at(Integer(1)), PolyError);
}

TEST_CASE("integer_valued: examples") {
  const std::vector<std::string> n{"n"};
  CHECK(integer_valued(parse_poly("(n^2 - n)/2", n)).integer_valued);
  const auto half = integer_valued(parse_poly("n/2", n));
  CHECK_FALSE(half.integer_valued);
  REQUIRE(half.witness);
  CHECK((*half.witness)[0] == 1);
  CHECK(integer_valued(parse_poly("(n^3 + 3*n^2 + 2*n)/6", n)).integer_valued);
  CHECK(integer_valued(MPoly(n)).integer_valued);
}

TEST_CASE("integer_valued: Mahler coefficients of C(n+2, 3)") {
  // oracle: C(n+2,3) = C(n,1) + 2 C(n,2) + C(n,3) by Vandermonde
  const auto cert = integer_valued(parse_poly("(n^3 + 3*n^2 + 2*n)/6", {"n"}));
  CHECK(cert.mahler.at({1}) == 1);
  CHECK(cert.mahler.at({2}) == 2);
  CHECK(cert.mahler.at({3}) == 1);
  CHECK(cert.mahler.size() == 3);
}

TEST_CASE("integer_valued agrees with grid evaluation") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> u{"x", "y"};
  std::uniform_int_distribution<int> which(0, 2);
  int positives = 0;
  for (int i = 0; i < 120; ++i) {
    MPoly p = random_poly(rng, u, 4, 4);
    if (which(rng) == 0) p = (binomial_poly("x", 3, u) * binomial_poly("y", 1, u)).scaled(Rational(which(rng) + 1)) + p.scaled(2);
    const auto cert = integer_valued(p);
    bool grid = true;
    for (long x = -6; x <= 6 && grid; ++x)
      for (long y = -6; y <= 6 && grid; ++y) grid = evaluate(p, std::vector<Rational>{x, y}).get_den() == 1;
    if (cert.integer_valued) {
      ++positives;
      CHECK(grid);
    } else {
      REQUIRE(cert.witness);
      std::vector<Rational> w;
      for (const auto& c : *cert.witness) w.push_back(Rational(c));
      CHECK(evaluate(p, w).get_den() != 1);
      CHECK_FALSE(grid);
    }
  }
  CHECK(positives > 0);
}

TEST_CASE("poly vector shares one universe") {
  const auto v = parse_poly_list("n, n^2 + m", {"n", "m"});
  CHECK(v.size() == 2);
  CHECK(v[0].vars() == v[1].vars());
  CHECK(v.to_string() == "(n, n^2 + m)");
}
