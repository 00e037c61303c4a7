#include "pwalk/generators.hpp"

#include "pwalk/integer_valued.hpp"

#include <algorithm>

namespace pwalk {

std::vector<std::string> default_coords(std::size_t d) {
  if (d == 1) return {"x"};
  if (d == 2) return {"x", "y"};
  if (d == 3) return {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

Walk unipotent_walk(const IntMatrix& gamma, std::vector<std::string> coords,
                    const std::string& time_var) {
  if (!gamma.square() || gamma.rows() == 0) throw GeneratorError("unipotent walk needs a square matrix");
  const std::size_t d = gamma.rows();
  if (coords.empty()) coords = default_coords(d);
  if (coords.size() != d) throw GeneratorError("coordinate count does not match matrix size");
  const IntMatrix nil = gamma - IntMatrix::identity(d);
  if (!nil.pow(d).is_zero())
    throw GeneratorError("matrix is not unipotent: (gamma - I)^" + std::to_string(d) + " != 0");

  std::vector<std::string> universe{time_var};
  universe.insert(universe.end(), coords.begin(), coords.end());
  std::vector<MPoly> entries(d, MPoly(universe));
  IntMatrix power = IntMatrix::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (power.is_zero()) break;
    const MPoly binom = binomial_poly(time_var, static_cast<std::uint32_t>(j), universe);
    for (std::size_t i = 0; i < d; ++i) {
      MPoly lin(universe);
      for (std::size_t k = 0; k < d; ++k)
        if (power(i, k) != 0) lin += MPoly::variable(coords[k], universe).scaled(Rational(power(i, k)));
      if (!lin.is_zero()) entries[i] += binom * lin;
    }
    power = power * nil;
  }
  return Walk(time_var, std::move(coords), std::move(entries));
}

std::vector<IntMatrix> sl_basis(std::size_t n) {
  if (n < 2) throw GeneratorError("sl_n needs n >= 2");
  std::vector<IntMatrix> basis;
  if (n == 2) {
    basis.push_back(IntMatrix{{0, 1}, {0, 0}});
    basis.push_back(IntMatrix{{1, 0}, {0, -1}});
    basis.push_back(IntMatrix{{0, 0}, {1, 0}});
    return basis;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      IntMatrix e(n, n);
      e(i, j) = 1;
      basis.push_back(std::move(e));
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    IntMatrix h(n, n);
    h(i, i) = 1;
    h(i + 1, i + 1) = -1;
    basis.push_back(std::move(h));
  }
  return basis;
}

namespace {

// Coordinates of a trace-zero matrix in sl_basis(n).
std::vector<Integer> sl_coordinates(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Integer> out;
  if (n == 2) return {m(0, 1), m(0, 0), m(1, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back(m(i, j));
  // M_ii = c_i - c_{i-1}, so c_i is the running sum of the diagonal
  Integer running = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    running += m(i, i);
    out.push_back(running);
  }
  return out;
}

}  // namespace

IntMatrix adjoint_action_matrix(const IntMatrix& g) {
  if (!g.square()) throw GeneratorError("adjoint action needs a square matrix");
  if (g.determinant() != 1) throw GeneratorError("adjoint action needs det(g) = 1");
  const IntMatrix g_inv = g.inverse();
  const auto basis = sl_basis(g.rows());
  IntMatrix ad(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto coords = sl_coordinates(g * basis[col] * g_inv);
    for (std::size_t row = 0; row < coords.size(); ++row) ad(row, col) = coords[row];
  }
  return ad;
}

std::vector<Rational> univariate_coefficients(const MPoly& p) {
  const auto used = p.used_vars();
  if (used.size() > 1) throw GeneratorError("expected a polynomial in one variable: " + p.to_string());
  if (used.empty()) return {p.constant_term()};
  std::vector<Rational> out;
  for (const auto& c : p.coefficients_in(used.front())) out.push_back(c.constant_term());
  return out;
}

namespace {

std::vector<Rational> checked_profile(const MPoly& p) {
  auto coeffs = univariate_coefficients(p);
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (!coeffs.empty() && coeffs.front() != 0) throw GeneratorError("P(0) must be 0");
  if (coeffs.size() < 3) throw GeneratorError("deg P must be at least 2");
  for (const auto& c : coeffs)
    if (c.get_den() != 1) throw GeneratorError("P must have integer coefficients");
  return coeffs;
}

MPoly univariate(const std::vector<Rational>& coeffs, const MPoly& arg) {
  MPoly acc(arg.vars());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * arg + MPoly::constant(*it, arg.vars());
  return acc;
}

}  // namespace

XyPWalks xy_minus_P_walks(const MPoly& p) {
  const auto coeffs = checked_profile(p);
  const std::vector<std::string> coords{"x", "y", "z"};
  const std::vector<std::string> u{"t", "x", "y", "z"};
  const MPoly t = MPoly::variable("t", u);
  const MPoly x = MPoly::variable("x", u);
  const MPoly y = MPoly::variable("y", u);
  const MPoly z = MPoly::variable("z", u);

  const MPoly diff = univariate(coeffs, z + t * x) - univariate(coeffs, z);
  TermMap quotient;
  for (const auto& [e, c] : diff.terms()) {
    if (e[1] == 0) throw GeneratorError("internal error: P(z + t x) - P(z) not divisible by x");
    Exponents q = e;
    q[1] -= 1;
    quotient.emplace(std::move(q), c);
  }
  const MPoly h(u, std::move(quotient));
  const MPoly h_swapped = substitute(h, {{"x", y}, {"y", x}, {"t", t}, {"z", z}}).with_vars(u);

  XyPWalks out{.s1 = Walk("t", coords, {x, y + h, z + t * x}),
               .s2 = Walk("t", coords, {x + h_swapped, y, z + t * y}),
               .h = h,
               .form = (x * y - univariate(coeffs, z)).with_vars(coords)};
  return out;
}

Walk bogolubov_walk(const MPoly& p) {
  const auto coeffs = checked_profile(p);
  const std::vector<std::string> u{"t", "x", "y"};
  const MPoly t = MPoly::variable("t", u);
  const MPoly x = MPoly::variable("x", u);
  const MPoly y = MPoly::variable("y", u);
  return Walk("t", {"x", "y"}, {x + univariate(coeffs, y + t) - univariate(coeffs, y), y + t});
}

MPoly bogolubov_form(const MPoly& p) {
  const auto coeffs = checked_profile(p);
  const std::vector<std::string> u{"x", "y"};
  return MPoly::variable("x", u) - univariate(coeffs, MPoly::variable("y", u));
}

IntMatrix signature_block_matrix(const IntMatrix& g) {
  if (g.rows() != 2 || g.cols() != 2 || g.determinant() != 1)
    throw GeneratorError("block generator must be in SL_2(Z)");
  const IntMatrix g_inv = g.inverse();
  IntMatrix out(3, 3);
  for (std::size_t col = 0; col < 3; ++col) {
    std::vector<Integer> v(3, 0);
    v[col] = 1;
    const Integer &x = v[0], &y = v[1], &z = v[2];
    IntMatrix a(2, 2);
    a(0, 0) = z;
    a(0, 1) = -(x + y);
    a(1, 0) = x - y;
    a(1, 1) = -z;
    const IntMatrix c = g * a * g_inv;
    const Integer twice_x = c(1, 0) - c(0, 1);
    const Integer twice_y = -(c(0, 1) + c(1, 0));
    if (!mpz_even_p(twice_x.get_mpz_t()) || !mpz_even_p(twice_y.get_mpz_t()))
      throw GeneratorError("conjugation leaves the parity lattice");
    out(0, col) = twice_x / 2;
    out(1, col) = twice_y / 2;
    out(2, col) = c(0, 0);
  }
  return out;
}

SignatureFormWalks signature_form_walks(std::size_t p, std::size_t q) {
  if (p < 1) throw GeneratorError("signature form needs p >= 1");
  if (q < 2) throw GeneratorError("signature form needs q >= 2 (no 3-dimensional block otherwise)");
  SignatureFormWalks out;
  for (std::size_t i = 1; i <= p; ++i) out.coords.push_back("x" + std::to_string(i));
  for (std::size_t j = 1; j <= q; ++j) out.coords.push_back("y" + std::to_string(j));
  out.form = MPoly(out.coords);
  for (std::size_t i = 0; i < p + q; ++i) {
    const MPoly v = MPoly::variable(out.coords[i], out.coords);
    out.form += (i < p) ? v * v : -(v * v);
  }

  for (std::size_t a = 1; a <= p; ++a) out.blocks.push_back({a, 1, 2});
  for (std::size_t b = 2; b < q; ++b) out.blocks.push_back({1, b, b + 1});

  const IntMatrix gens[2] = {IntMatrix{{1, 2}, {0, 1}}, IntMatrix{{1, 0}, {2, 1}}};
  const std::size_t d = p + q;
  for (const auto& blk : out.blocks) {
    const std::array<std::size_t, 3> idx{blk.a - 1, p + blk.b - 1, p + blk.c - 1};
    for (const auto& g : gens) {
      const IntMatrix small = signature_block_matrix(g);
      IntMatrix m = IntMatrix::identity(d);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(idx[i], idx[j]) = small(i, j);
      out.walks.push_back(unipotent_walk(m, out.coords));
      out.matrices.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace pwalk
