#include "pwalk/integer_valued.hpp"

#include <algorithm>
#include <numeric>

namespace pwalk {

namespace {

// surj[j][k] = S(j,k) * k!, so that x^j = sum_k surj[j][k] * C(x,k).
std::vector<std::vector<Integer>> surjection_table(std::uint32_t max_degree) {
  std::vector<std::vector<Integer>> t(max_degree + 1);
  for (std::uint32_t j = 0; j <= max_degree; ++j) t[j].assign(j + 1, 0);
  t[0][0] = 1;
  for (std::uint32_t j = 1; j <= max_degree; ++j)
    for (std::uint32_t k = 1; k <= j; ++k) {
      // T(j,k) = k T(j-1,k) + k T(j-1,k-1)
      Integer v = 0;
      if (k <= j - 1) v += t[j - 1][k] * k;
      v += t[j - 1][k - 1] * k;
      t[j][k] = v;
    }
  return t;
}

}  // namespace

MPoly binomial_poly(const std::string& x, std::uint32_t k, const std::vector<std::string>& vars) {
  MPoly acc = MPoly::constant(1, vars);
  const MPoly xv = MPoly::variable(x, vars);
  Integer fact = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    acc = acc * (xv - MPoly::constant(i, vars));
    fact *= i + 1;
  }
  return acc.scaled(Rational(Integer(1), fact));
}

IntegralityCertificate integer_valued(const MPoly& p) {
  IntegralityCertificate cert;
  const std::size_t r = p.vars().size();
  std::uint32_t max_deg = 0;
  for (const auto& [e, c] : p.terms())
    for (auto x : e) max_deg = std::max(max_deg, x);
  const auto surj = surjection_table(max_deg);

  TermMap mahler;
  for (const auto& [e, c] : p.terms()) {
    // expand prod_i x_i^{e_i} one variable at a time
    std::vector<std::pair<Exponents, Integer>> partial{{Exponents(r, 0), Integer(1)}};
    for (std::size_t i = 0; i < r; ++i) {
      if (e[i] == 0) continue;
      std::vector<std::pair<Exponents, Integer>> next;
      for (const auto& [k, w] : partial)
        for (std::uint32_t j = 1; j <= e[i]; ++j) {
          Exponents nk = k;
          nk[i] = j;
          next.emplace_back(std::move(nk), w * surj[e[i]][j]);
        }
      partial = std::move(next);
    }
    for (auto& [k, w] : partial) {
      auto [it, inserted] = mahler.try_emplace(k, c * w);
      if (!inserted) it->second += c * w;
    }
  }
  for (auto it = mahler.begin(); it != mahler.end();) {
    if (it->second == 0) {
      it = mahler.erase(it);
    } else {
      ++it;
    }
  }

  // A non-integer coefficient of minimal total degree is minimal componentwise,
  // and the polynomial is non-integral at that very multi-index.
  const Exponents* smallest = nullptr;
  std::uint64_t smallest_degree = 0;
  for (const auto& [k, c] : mahler) {
    if (c.get_den() == 1) continue;
    const auto deg = std::accumulate(k.begin(), k.end(), std::uint64_t{0});
    if (smallest == nullptr || deg <= smallest_degree) {
      smallest = &k;
      smallest_degree = deg;
    }
  }
  if (smallest != nullptr) {
    cert.integer_valued = false;
    cert.witness = std::vector<Integer>(smallest->begin(), smallest->end());
  }
  cert.mahler = std::move(mahler);
  return cert;
}

}  // namespace pwalk
