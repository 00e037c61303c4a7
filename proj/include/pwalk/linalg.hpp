#pragma once

#include "pwalk/mpoly.hpp"

#include <vector>

namespace pwalk {

/// Dense row-major matrix over Q.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of {x : M x = 0}, one vector per free column, exact.
std::vector<std::vector<Rational>> kernel_basis(RationalMatrix m);

/// Scales a non-zero rational vector to a primitive integer vector whose first non-zero entry is positive.
std::vector<Rational> primitive_integer_direction(std::vector<Rational> v);

}  // namespace pwalk
