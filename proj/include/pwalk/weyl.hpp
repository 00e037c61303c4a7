#pragma once

#include "pwalk/cyclotomic.hpp"
#include "pwalk/frequency.hpp"
#include "pwalk/kernels.hpp"
#include "pwalk/mpoly.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace pwalk {

/// n -> p(n) for a polynomial vector in at most one variable.
class PolySequence {
 public:
  explicit PolySequence(const PolyVector& p);

  std::size_t dim() const { return evals_.size(); }
  bool integer_valued() const { return integer_valued_; }
  std::vector<Rational> operator()(const Integer& n) const;
  std::vector<Integer> integer_at(const Integer& n) const;
  /// Upper bound on the bit length of |p_i(n)| for 0 <= n <= N.
  std::size_t magnitude_bits(const Integer& N) const;

 private:
  std::vector<UnivariateEvaluator> evals_;
  std::vector<std::vector<Rational>> coeffs_;
  bool integer_valued_ = true;
};

/// frac(<p(n), theta>) for n = first..first+count-1, as doubles.
std::vector<double> sequence_phases(const PolySequence& p, const std::vector<Frequency>& theta, std::uint64_t first,
                                    std::uint64_t count, unsigned digits, const ParallelConfig& cfg);

/// (1/N) sum_{n=1}^N e(<p(n), theta>) with compensated summation.
std::complex<double> weyl_sum(const PolyVector& p, const std::vector<Frequency>& theta, std::uint64_t N,
                              const ParallelConfig& cfg = {}, unsigned digits = 60);
std::complex<double> weyl_sum_serial(const PolyVector& p, const std::vector<Frequency>& theta, std::uint64_t N,
                                     std::size_t partitions = 8, unsigned digits = 60);

/// The same average in exact arithmetic, for rational theta and integer-valued p.
CyclotomicNumber weyl_sum_exact(const PolyVector& p, const std::vector<Rational>& theta, std::uint64_t N);

}  // namespace pwalk
