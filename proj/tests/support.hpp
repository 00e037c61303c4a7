#pragma once

#include "pwalk/generators.hpp"
#include "pwalk/mpoly.hpp"
#include "pwalk/parse.hpp"
#include "pwalk/walk.hpp"

#include <random>
#include <string>
#include <vector>

namespace pwalk::testing {

inline MPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned max_deg,
                         unsigned terms, bool allow_fractions = true) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, allow_fractions ? 4 : 1), deg(0, int(max_deg));
  MPoly out(vars);
  for (unsigned i = 0; i < terms; ++i) {
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    MPoly mono = MPoly::constant(c, vars);
    unsigned budget = deg(rng);
    for (unsigned k = 0; k < budget; ++k) {
      std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
      mono = mono * MPoly::variable(vars[pick(rng)], vars);
    }
    out += mono;
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Integer> random_vector(std::mt19937_64& rng, std::size_t d, long lo = -6, long hi = 6) {
  std::uniform_int_distribution<long> u(lo, hi);
  std::vector<Integer> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(Integer(u(rng)));
  return v;
}

/// Three-dimensional walks from every family, for mixing in batteries.
inline std::vector<Walk> walk_zoo3() {
  std::vector<Walk> out;
  for (const char* p : {"z^2", "z^3", "2*z^2 - 3*z^3"}) {
    const auto w = xy_minus_P_walks(parse_poly(p, {"z"}));
    out.push_back(w.s1);
    out.push_back(w.s2);
  }
  out.push_back(unipotent_walk(IntMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
  out.push_back(unipotent_walk(IntMatrix{{1, 0, 0}, {2, 1, 0}, {1, 3, 1}}));
  out.push_back(unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 1}, {0, 1}})));
  out.push_back(unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 0}, {1, 1}})));
  const auto sig = signature_form_walks(1, 2);
  out.insert(out.end(), sig.walks.begin(), sig.walks.end());
  return out;
}

}  // namespace pwalk::testing

#ifdef DOCTEST_VERSION_STR
namespace doctest {
template <>
struct StringMaker<pwalk::MPoly> {
  static String convert(const pwalk::MPoly& p) {
    std::string s = p.to_string() + " over [";
    for (const auto& v : p.vars()) s += v + " ";
    return (s + "]").c_str();
  }
};
}  // namespace doctest
#endif
