#pragma once

#include "pwalk/mpoly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace pwalk {

/// Coefficients of the q-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(unsigned long q);

/// sum_j c_j zeta_q^j in Q(zeta_q), zeta_q = e(1/q). Exact.
class CyclotomicNumber {
 public:
  explicit CyclotomicNumber(unsigned long q);
  static CyclotomicNumber root(unsigned long q, unsigned long j);

  unsigned long order() const { return q_; }
  void add_root(unsigned long j, const Rational& c = 1);
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber scaled(const Rational& s) const;

  bool is_zero() const { return reduced().empty(); }
  /// The value when it lies in Q.
  std::optional<Rational> as_rational() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  // remainder modulo Phi_q in the power basis, trailing zeros trimmed
  std::vector<Rational> reduced() const;

  unsigned long q_;
  std::vector<Rational> coeffs_;  // length q, coefficient of zeta^j
};

}  // namespace pwalk
