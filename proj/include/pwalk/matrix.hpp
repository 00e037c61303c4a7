#pragma once

#include "pwalk/mpoly.hpp"

#include <string>
#include <vector>

namespace pwalk {

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square or rectangular matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  IntMatrix pow(std::size_t e) const;
  Integer determinant() const;
  /// Exact inverse; throws unless it is an integer matrix.
  IntMatrix inverse() const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  /// "[[1,2],[0,1]]"
  std::string to_string() const;
  static IntMatrix parse(const std::string& text);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

}  // namespace pwalk
