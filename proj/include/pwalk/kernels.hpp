#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pwalk {

/// Worker count and reduction partition count. Results depend on partitions,
/// never on jobs.
struct ParallelConfig {
  std::size_t jobs = 1;
  std::size_t partitions = 8;
};

namespace kernels {

/// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }
  void merge(const CompensatedSum& o);

 private:
  double sum_ = 0;
  double comp_ = 0;
};

struct CompensatedComplex {
  CompensatedSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const CompensatedComplex& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

/// [begin, end) bounds of partition p of n items split into parts pieces.
std::pair<std::size_t, std::size_t> partition_bounds(std::size_t n, std::size_t parts, std::size_t p);

/// Mean of e(phase_i) = exp(2 pi i phase_i).
std::complex<double> mean_unit_phase_serial(std::span<const double> phases, std::size_t partitions);
std::complex<double> mean_unit_phase_parallel(std::span<const double> phases, const ParallelConfig& cfg);

/// Mean of values.
double mean_serial(std::span<const double> values, std::size_t partitions);
double mean_parallel(std::span<const double> values, const ParallelConfig& cfg);

struct Box {
  std::vector<double> start;   // arc i is [start_i, start_i + length_i) mod 1
  std::vector<double> length;
  bool contains(const double* x) const;
};

/**
 * Sum over sample points x of 1_B(x) * prod_i (1/N_i) #{n : x + offset_i[n] in B}.
 * samples: M x D row-major; offsets[i]: N_i x D row-major, already reduced mod 1.
 */
double correlation_sum_serial(std::span<const double> samples, const std::vector<std::vector<double>>& offsets,
                              const Box& box, std::size_t partitions);
double correlation_sum_parallel(std::span<const double> samples, const std::vector<std::vector<double>>& offsets,
                                const Box& box, const ParallelConfig& cfg);

/// out[i] = f(i) for i in [0, n); exceptions from f are rethrown.
void parallel_for(std::size_t n, const ParallelConfig& cfg, const std::function<void(std::size_t)>& f);

enum class Probe { No, Yes, Indeterminate };

struct FirstHit {
  std::optional<std::uint64_t> index;
  std::uint64_t indeterminate = 0;  // among scanned candidates
  std::uint64_t scanned = 0;
};

/// Smallest i in [lo, hi] with probe(i) == Yes.
FirstHit first_hit_serial(std::uint64_t lo, std::uint64_t hi, const std::function<Probe(std::uint64_t)>& probe);
/// Same answer as first_hit_serial; chunks are scanned in waves and the
/// smallest hit of the first productive wave wins.
FirstHit first_hit_parallel(std::uint64_t lo, std::uint64_t hi, const std::function<Probe(std::uint64_t)>& probe,
                            const ParallelConfig& cfg, std::uint64_t chunk = 64);

}  // namespace kernels
}  // namespace pwalk
