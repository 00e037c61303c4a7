#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwalk/generators.hpp"
#include "pwalk/parse.hpp"
#include "support.hpp"

using namespace pwalk;

namespace {

IntMatrix naive_mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Q(Mv) - Q(v) as a polynomial in the coordinates.
bool form_preserved(const MPoly& q, const IntMatrix& m, const std::vector<std::string>& coords) {
  Bindings b;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    MPoly row(coords);
    for (std::size_t j = 0; j < coords.size(); ++j)
      row += MPoly::variable(coords[j], coords).scaled(Rational(m(i, j)));
    b.emplace_back(coords[i], row);
  }
  return (substitute(q, b).with_vars(coords) - q).is_zero();
}

}  // namespace

TEST_CASE("xyP: H for z^2 and z^3") {
  const auto w2 = xy_minus_P_walks(parse_poly("z^2", {"z"}));
  CHECK(w2.h == parse_poly("2*z*t + x*t^2", w2.h.vars()));
  const auto w3 = xy_minus_P_walks(parse_poly("z^3", {"z"}));
  CHECK(w3.h == parse_poly("3*z^2*t + 3*z*x*t^2 + x^2*t^3", w3.h.vars()));
  CHECK(w2.form == parse_poly("x*y - z^2", {"x", "y", "z"}));
}

TEST_CASE("xyP: profile preconditions") {
  CHECK_THROWS_AS(xy_minus_P_walks(parse_poly("z^2 + 1", {"z"})), GeneratorError);
  CHECK_THROWS_AS(xy_minus_P_walks(parse_poly("3*z", {"z"})), GeneratorError);
  CHECK_THROWS_AS(xy_minus_P_walks(parse_poly("z^2/2", {"z"})), GeneratorError);
  CHECK_THROWS_AS(bogolubov_walk(parse_poly("y^2 + y + 1", {"y"})), GeneratorError);
}

TEST_CASE("xyP: H has leading term c_D t^D x^(D-1)") {
  for (const char* p : {"z^2", "z^3", "z^4", "2*z^2 - 3*z^3", "z^5", "-4*z^4 + z^2"}) {
    const auto P = parse_poly(p, {"z"});
    const auto coeffs = univariate_coefficients(P);
    const std::uint32_t D = static_cast<std::uint32_t>(coeffs.size() - 1);
    const auto w = xy_minus_P_walks(P);
    const auto by_x = w.h.coefficients_in("x");
    REQUIRE(by_x.size() == D);
    CHECK(by_x.back() == parse_poly("t", by_x.back().vars()).pow(D).scaled(coeffs.back()));
    CHECK(preserves(w.form, w.s1));
    CHECK(preserves(w.form, w.s2));
  }
}

TEST_CASE("Bogolubov walk: expansions") {
  const auto b2 = bogolubov_walk(parse_poly("y^2", {"y"}));
  CHECK(b2.entry(0) == parse_poly("x + 2*y*t + t^2", b2.universe()));
  CHECK(b2.entry(1) == parse_poly("y + t", b2.universe()));
  const auto b3 = bogolubov_walk(parse_poly("y^3", {"y"}));
  CHECK(b3.entry(0) == parse_poly("x + 3*y^2*t + 3*y*t^2 + t^3", b3.universe()));
  CHECK(preserves(bogolubov_form(parse_poly("y^3", {"y"})), b3));
}

TEST_CASE("unipotent walk: Jordan block and precondition") {
  const auto s = unipotent_walk(IntMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(s.entry(0) == parse_poly("x + t*y + (t^2 - t)/2*z", s.universe()));
  CHECK(s.integrality() == Integrality::MahlerCertified);
  CHECK_THROWS_AS(unipotent_walk(IntMatrix{{2, 0}, {0, 1}}), GeneratorError);
}

TEST_CASE("unipotent walk: semigroup law") {
  const auto g = IntMatrix{{1, 2, -1}, {0, 1, 3}, {0, 0, 1}};
  const auto s = unipotent_walk(g);
  std::mt19937_64 rng(7);
  for (long m = 0; m < 6; ++m)
    for (long n = 0; n < 6; ++n) {
      const auto v = testing::random_vector(rng, 3);
      CHECK(walk_apply(s, Integer(m + n), v) == walk_apply(s, Integer(m), walk_apply(s, Integer(n), v)));
      CHECK(walk_apply(s, Integer(n), v) == g.pow(n).apply(v));
    }
}

TEST_CASE("adjoint action on sl2") {
  const IntMatrix g{{1, 1}, {0, 1}};
  const auto ad = adjoint_action_matrix(g);
  // basis order (e, h, f)
  CHECK(ad.apply({1, 0, 0}) == std::vector<Integer>{1, 0, 0});
  CHECK(ad.apply({0, 0, 1}) == std::vector<Integer>{-1, 1, 1});
  CHECK_THROWS_AS(adjoint_action_matrix(IntMatrix{{2, 0}, {0, 1}}), GeneratorError);
}

TEST_CASE("adjoint action is a homomorphism and matches conjugation") {
  const std::vector<IntMatrix> gs{IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}, IntMatrix{{2, 1}, {1, 1}},
                                  IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 0, 0}, {2, 1, 0}, {0, 1, 1}}};
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (gs[i].rows() != gs[j].rows()) continue;
      CHECK(adjoint_action_matrix(naive_mul(gs[i], gs[j])) ==
            naive_mul(adjoint_action_matrix(gs[i]), adjoint_action_matrix(gs[j])));
    }
  // column images reproduce g X g^-1 in the basis
  for (const auto& g : gs) {
    const auto basis = sl_basis(g.rows());
    const auto ad = adjoint_action_matrix(g);
    const auto gi = g.inverse();
    for (std::size_t c = 0; c < basis.size(); ++c) {
      IntMatrix rebuilt(g.rows(), g.rows());
      for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t a = 0; a < g.rows(); ++a)
          for (std::size_t b = 0; b < g.rows(); ++b) rebuilt(a, b) += ad(r, c) * basis[r](a, b);
      CHECK(rebuilt == naive_mul(naive_mul(g, basis[c]), gi));
    }
  }
}

TEST_CASE("signature forms: sample matrix") {
  const auto s = signature_form_walks(1, 2);
  REQUIRE(!s.matrices.empty());
  CHECK(s.matrices[0] == (IntMatrix{{3, -2, 2}, {2, -1, 2}, {2, -2, 1}}));
  CHECK(s.form == parse_poly("x1^2 - y1^2 - y2^2", s.coords));
}

TEST_CASE("signature forms: unipotent and form preserving") {
  for (auto [p, q] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 2}, {1, 3}, {3, 4}}) {
    const auto s = signature_form_walks(p, q);
    CHECK(s.walks.size() == 2 * s.blocks.size());
    CHECK(s.blocks.size() == p + q - 2);
    const std::size_t d = p + q;
    for (std::size_t i = 0; i < s.matrices.size(); ++i) {
      const auto& m = s.matrices[i];
      CHECK(m.determinant() == 1);
      CHECK((m - IntMatrix::identity(d)).pow(3).is_zero());
      CHECK(form_preserved(s.form, m, s.coords));
      CHECK(preserves(s.form, s.walks[i]));
    }
  }
  CHECK_THROWS_AS(signature_form_walks(1, 1), GeneratorError);
}
