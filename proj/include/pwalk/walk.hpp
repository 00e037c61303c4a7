#pragma once

#include "pwalk/mpoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pwalk {

class WalkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How a walk's entries are known to be integer-valued on integer points.
enum class Integrality {
  IntegerCoefficients,     // trivially integral
  MahlerCertified,         // binomial-basis expansion checked
  ClosedUnderComposition,  // built from integral walks by composition / reparametrization
};

const char* to_string(Integrality i);

/**
 * Polynomial walk on Z^d: n -> (x -> (q_1(n, x), ..., q_d(n, x))).
 *
 * Entries live in the universe (t, x_1, ..., x_d). Construction checks that
 * t = 0 gives the identity map and that every entry is integer-valued.
 */
class Walk {
 public:
  Walk(std::string time_var, std::vector<std::string> coords, std::vector<MPoly> entries);

  static Walk identity(std::vector<std::string> coords, std::string time_var = "t");

  std::size_t dim() const { return coords_.size(); }
  const std::string& time_var() const { return universe_.front(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<MPoly>& entries() const { return entries_; }
  const MPoly& entry(std::size_t i) const { return entries_[i]; }
  Integrality integrality() const { return integrality_; }

  /// Same walk with coordinates renamed positionally.
  Walk with_coords(std::vector<std::string> coords) const;

  /// Text record: "walk <d>", "time <t>", "coords <x...>", then one entry per line.
  std::string serialize() const;
  static Walk deserialize(const std::string& text);

  friend bool operator==(const Walk& a, const Walk& b) {
    return a.universe_ == b.universe_ && a.entries_ == b.entries_;
  }

 private:
  struct Trusted {};
  Walk(Trusted, std::string time_var, std::vector<std::string> coords, std::vector<MPoly> entries,
       Integrality integrality);
  void check_identity_at_zero() const;

  friend Walk walk_compose(const Walk&, const Walk&);
  friend Walk walk_reparam(const Walk&, std::uint32_t);
  friend Walk walk_dilate(const Walk&, const Integer&);

  std::vector<std::string> coords_;
  std::vector<std::string> universe_;
  std::vector<MPoly> entries_;
  Integrality integrality_ = Integrality::IntegerCoefficients;
};

/// Exact image S(n) v.
std::vector<Integer> walk_apply(const Walk& s, const Integer& n, const std::vector<Integer>& v);

/// (S o R)(n) = S(n) o R(n); R's coordinates are matched to S's by position.
Walk walk_compose(const Walk& s, const Walk& r);

/// n -> S(n^ell).
Walk walk_reparam(const Walk& s, std::uint32_t ell);

/// n -> S(k n). Keeps the walk inside k Z^d when started in k Z^d.
Walk walk_dilate(const Walk& s, const Integer& k);

struct ScalingCertificate {
  bool holds = true;
  /// Symbolic part: every entry has zero constant term.
  std::optional<std::size_t> offending_entry;
  Rational offending_constant = 0;
  /// Concrete part: sampled (k, n, v) with v in kZ^d, all coordinates of S(kn)v divisible by k.
  std::size_t samples_checked = 0;
  std::string message;
};

/// Symbolic half of the scaling check: every entry must have zero constant term.
ScalingCertificate constant_term_check(const std::vector<MPoly>& entries);

ScalingCertificate walk_scaling_certificate(const Walk& s, std::uint64_t seed = 1,
                                            std::size_t samples = 16);

/// F(S(t) x) - F(x) is the zero polynomial. F may only use the walk's coordinates.
bool preserves(const MPoly& form, const Walk& s);

/// The single-variable orbit polynomial n -> S(n) v, with the time variable renamed.
PolyVector walk_orbit(const Walk& s, const std::vector<Integer>& v, const std::string& var = "n");

}  // namespace pwalk
