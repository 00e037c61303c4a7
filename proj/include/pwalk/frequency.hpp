#pragma once

#include "pwalk/mpoly.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace pwalk {

/// Basis of the number field span used for frequencies: 1, sqrt2, sqrt3, sqrt5, pi.
enum class Basis : std::size_t { One = 0, Sqrt2, Sqrt3, Sqrt5, Pi };
inline constexpr std::size_t kBasisSize = 5;

/**
 * A real number c_0 + c_1 sqrt2 + c_2 sqrt3 + c_3 sqrt5 + c_4 pi with rational c_i.
 *
 * Named constants: sqrt2, sqrt3, sqrt5, golden = (1 + sqrt5)/2, pi, pi-frac = pi - 3.
 */
class Frequency {
 public:
  Frequency() = default;
  Frequency(const Rational& r);  // NOLINT: rationals embed implicitly
  static Frequency named(std::string_view name);

  const Rational& coeff(Basis b) const { return coeffs_[static_cast<std::size_t>(b)]; }
  const std::array<Rational, kBasisSize>& coeffs() const { return coeffs_; }
  bool is_rational() const;
  bool is_zero() const;

  Frequency& operator+=(const Frequency& o);
  friend Frequency operator+(Frequency a, const Frequency& b) { return a += b; }
  friend Frequency operator-(const Frequency& a, const Frequency& b);
  friend Frequency operator*(const Rational& s, const Frequency& f);
  friend bool operator==(const Frequency& a, const Frequency& b) = default;

  double approx() const;
  std::string to_string() const;

 private:
  std::array<Rational, kBasisSize> coeffs_{};
};

/// "1/3", "0.25", "-2", "sqrt2", "2*sqrt3 - 1/2", "sqrt5/2". Exact.
Frequency parse_frequency(std::string_view text);
std::vector<Frequency> parse_frequency_list(std::string_view text);

/// Exact rational from an integer, p/q, or finite decimal literal.
Rational parse_rational(std::string_view text);

/// floor(x_b * 2^bits) for a basis constant, from a shared high-precision cache.
Integer basis_fixed_point(Basis b, std::size_t bits);

/**
 * A point of the circle R/Z stored as fixed point: value = fixed / 2^bits,
 * with |value - true value| below 2^-(bits - slack_bits).
 */
struct Phase {
  Integer fixed;
  std::size_t bits = 0;

  double value() const;
};

enum class ArcTest { Inside, Outside, Indeterminate };

/**
 * Compares the circular distance from the phase to center against a radius.
 * Inside: distance < radius - guard. Outside: distance > radius + guard.
 */
ArcTest compare_distance(const Phase& phase, const Rational& center, const Rational& radius,
                         const Rational& guard);

/**
 * Evaluates frac(<coeffs, v>) for integer vectors v with accuracy
 * 10^-digits regardless of the size of v. The working precision grows with
 * the magnitude of the combination; constants come from basis_fixed_point.
 * Immutable after construction, so one instance may serve many threads.
 */
class PhaseKernel {
 public:
  PhaseKernel(std::vector<Frequency> coeffs, unsigned digits, std::size_t magnitude_hint_bits = 256);

  Phase operator()(const std::vector<Integer>& v) const;
  Phase operator()(const std::vector<Rational>& v) const;
  Phase operator()(const Frequency& f) const;

  std::size_t dim() const { return coeffs_.size(); }
  unsigned digits() const { return digits_; }

 private:
  Phase evaluate(const std::array<Integer, kBasisSize>& numerators, const Integer& extra_den) const;

  std::vector<Frequency> coeffs_;
  unsigned digits_;
  std::size_t target_bits_;
  // per basis element: common denominator and integer numerators per coordinate
  std::array<Integer, kBasisSize> denominators_;
  std::array<std::vector<Integer>, kBasisSize> numerators_;
  std::array<bool, kBasisSize> used_{};
  std::size_t cached_bits_ = 0;
  std::array<Integer, kBasisSize> cached_constants_;
};

}  // namespace pwalk
