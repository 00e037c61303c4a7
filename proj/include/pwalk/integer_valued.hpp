#pragma once

#include "pwalk/mpoly.hpp"

#include <optional>

namespace pwalk {

/**
 * Result of expanding a polynomial in the product binomial (Mahler) basis
 * prod_i C(x_i, k_i). The polynomial takes integer values on all of Z^vars
 * exactly when every basis coefficient is an integer.
 */
struct IntegralityCertificate {
  bool integer_valued = true;
  /// Basis coefficients keyed by the multi-index (k_1, ..., k_r).
  TermMap mahler;
  /// When not integer-valued: a point (aligned with the universe) with a non-integer value.
  std::optional<std::vector<Integer>> witness;
};

IntegralityCertificate integer_valued(const MPoly& p);

/// C(x, k) as a polynomial in x over the given universe.
MPoly binomial_poly(const std::string& x, std::uint32_t k, const std::vector<std::string>& vars);

}  // namespace pwalk
