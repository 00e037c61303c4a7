#pragma once

#include "pwalk/mpoly.hpp"
#include "pwalk/walk.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pwalk {

/// L(x) = <linear, x> + constant.
struct AffineFunctional {
  std::vector<Rational> linear;
  Rational constant = 0;

  std::string to_string(const std::vector<std::string>& coords) const;
};

/**
 * Basis of the affine maps L with L(P) identically zero. Exact kernel of the
 * matrix whose columns are the monomial coefficients of 1, p_1, ..., p_d.
 * Each basis vector is scaled to a primitive integer direction.
 */
std::vector<AffineFunctional> affine_annihilator(const PolyVector& p);

/// The entries together with 1 are linearly independent over Q.
bool is_fleeing(const PolyVector& p);

/// Reserved name of the k-th orbit time variable (1-based).
std::string orbit_time_var(std::size_t k);

/**
 * Symbolic orbit s_N(t_N) ... s_1(t_1) v with s_k = gens[(k-1) mod r].
 * Coordinates of the generators may not use the reserved names t_1, t_2, ...
 */
PolyVector orbit_polynomials(const std::vector<Walk>& gens, const std::vector<Integer>& v,
                             std::size_t depth);

struct FleeingOptions {
  std::optional<std::size_t> max_depth;   // default 8 * r * d
  std::optional<std::uint32_t> max_base;  // default 10 * (maxdeg + 1)
};

struct FleeingCertificate {
  std::size_t depth = 0;
  std::vector<AffineFunctional> annihilator_basis;  // empty on success
  std::uint32_t base = 0;
  std::vector<std::uint64_t> exponents;  // base^1, ..., base^depth
  Walk final_walk;
  PolyVector multi_orbit;  // in t_1..t_N
  PolyVector orbit_poly;   // in n, after t_k -> n^{e_k}
  std::vector<std::size_t> trace;  // annihilator dimension for N = 1..depth
  std::vector<Integer> start;

  std::string report() const;
};

class FleeingError : public std::runtime_error {
 public:
  enum class Kind { DepthExhausted, BaseExhausted };
  FleeingError(Kind kind, const std::string& what, std::vector<std::size_t> trace)
      : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}
  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& trace() const { return trace_; }

 private:
  Kind kind_;
  std::vector<std::size_t> trace_;
};

/**
 * Builds a single-parameter walk S(n) = s_N(n^{e_N}) o ... o s_1(n^{e_1}) whose
 * orbit S(n) v is hyperplane-fleeing. Depth grows until the annihilator of the
 * symbolic orbit is trivial; then e_k = R^k with R = 1 + (largest t-exponent),
 * and R is raised until the substituted orbit is verified independent.
 */
FleeingCertificate construct_fleeing_walk(const std::vector<Walk>& gens,
                                          const std::vector<Integer>& v,
                                          const FleeingOptions& options = {});

}  // namespace pwalk
