#include "pwalk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pwalk::kernels {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

void CompensatedSum::merge(const CompensatedSum& o) {
  add(o.sum_);
  add(o.comp_);
}

std::pair<std::size_t, std::size_t> partition_bounds(std::size_t n, std::size_t parts, std::size_t p) {
  const std::size_t base = n / parts, extra = n % parts;
  const std::size_t begin = p * base + std::min(p, extra);
  return {begin, begin + base + (p < extra ? 1 : 0)};
}

namespace {

std::size_t effective_parts(std::size_t n, std::size_t parts) {
  return std::max<std::size_t>(1, std::min(parts, std::max<std::size_t>(n, 1)));
}

int threads(const ParallelConfig& cfg) { return static_cast<int>(std::max<std::size_t>(1, cfg.jobs)); }

std::complex<double> unit(double phase) {
  const double a = 2 * std::numbers::pi * (phase - std::floor(phase));
  return {std::cos(a), std::sin(a)};
}

template <class Acc, class Body>
Acc reduce_serial(std::size_t n, std::size_t parts, Body body) {
  parts = effective_parts(n, parts);
  Acc total;
  for (std::size_t p = 0; p < parts; ++p) {
    const auto [b, e] = partition_bounds(n, parts, p);
    Acc local;
    for (std::size_t i = b; i < e; ++i) body(local, i);
    total.merge(local);
  }
  return total;
}

template <class Acc, class Body>
Acc reduce_parallel(std::size_t n, const ParallelConfig& cfg, Body body) {
  const std::size_t parts = effective_parts(n, cfg.partitions);
  std::vector<Acc> partial(parts);
#pragma omp parallel for schedule(static) num_threads(threads(cfg))
  for (std::size_t p = 0; p < parts; ++p) {
    const auto [b, e] = partition_bounds(n, parts, p);
    for (std::size_t i = b; i < e; ++i) body(partial[p], i);
  }
  Acc total;
  for (const auto& a : partial) total.merge(a);
  return total;
}

}  // namespace

std::complex<double> mean_unit_phase_serial(std::span<const double> phases, std::size_t partitions) {
  if (phases.empty()) return 0;
  auto acc = reduce_serial<CompensatedComplex>(phases.size(), partitions,
                                               [&](CompensatedComplex& a, std::size_t i) { a.add(unit(phases[i])); });
  return acc.value() / static_cast<double>(phases.size());
}

std::complex<double> mean_unit_phase_parallel(std::span<const double> phases, const ParallelConfig& cfg) {
  if (phases.empty()) return 0;
  auto acc = reduce_parallel<CompensatedComplex>(phases.size(), cfg,
                                                 [&](CompensatedComplex& a, std::size_t i) { a.add(unit(phases[i])); });
  return acc.value() / static_cast<double>(phases.size());
}

double mean_serial(std::span<const double> values, std::size_t partitions) {
  if (values.empty()) return 0;
  auto acc = reduce_serial<CompensatedSum>(values.size(), partitions,
                                           [&](CompensatedSum& a, std::size_t i) { a.add(values[i]); });
  return acc.value() / static_cast<double>(values.size());
}

double mean_parallel(std::span<const double> values, const ParallelConfig& cfg) {
  if (values.empty()) return 0;
  auto acc = reduce_parallel<CompensatedSum>(values.size(), cfg,
                                             [&](CompensatedSum& a, std::size_t i) { a.add(values[i]); });
  return acc.value() / static_cast<double>(values.size());
}

bool Box::contains(const double* x) const {
  for (std::size_t j = 0; j < start.size(); ++j) {
    double u = x[j] - start[j];
    u -= std::floor(u);
    if (!(u < length[j])) return false;
  }
  return true;
}

namespace {

double correlation_at(const double* x, const std::vector<std::vector<double>>& offsets, const Box& box,
                      std::vector<double>& scratch) {
  if (!box.contains(x)) return 0;
  const std::size_t dim = box.start.size();
  double prod = 1;
  for (const auto& off : offsets) {
    const std::size_t n = off.size() / dim;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < dim; ++j) scratch[j] = x[j] + off[k * dim + j];
      hits += box.contains(scratch.data());
    }
    prod *= static_cast<double>(hits) / static_cast<double>(n);
    if (prod == 0) break;
  }
  return prod;
}

}  // namespace

double correlation_sum_serial(std::span<const double> samples, const std::vector<std::vector<double>>& offsets,
                              const Box& box, std::size_t partitions) {
  const std::size_t dim = box.start.size();
  std::vector<double> scratch(dim);
  auto acc = reduce_serial<CompensatedSum>(samples.size() / dim, partitions, [&](CompensatedSum& a, std::size_t i) {
    a.add(correlation_at(samples.data() + i * dim, offsets, box, scratch));
  });
  return acc.value();
}

double correlation_sum_parallel(std::span<const double> samples, const std::vector<std::vector<double>>& offsets,
                                const Box& box, const ParallelConfig& cfg) {
  const std::size_t dim = box.start.size();
  const std::size_t m = samples.size() / dim;
  const std::size_t parts = effective_parts(m, cfg.partitions);
  std::vector<CompensatedSum> partial(parts);
#pragma omp parallel num_threads(threads(cfg))
  {
    std::vector<double> scratch(dim);
#pragma omp for schedule(static)
    for (std::size_t p = 0; p < parts; ++p) {
      const auto [b, e] = partition_bounds(m, parts, p);
      for (std::size_t i = b; i < e; ++i) partial[p].add(correlation_at(samples.data() + i * dim, offsets, box, scratch));
    }
  }
  CompensatedSum total;
  for (const auto& a : partial) total.merge(a);
  return total.value();
}

void parallel_for(std::size_t n, const ParallelConfig& cfg, const std::function<void(std::size_t)>& f) {
  std::exception_ptr error;
  std::mutex mutex;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads(cfg))
  for (std::size_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

FirstHit first_hit_serial(std::uint64_t lo, std::uint64_t hi, const std::function<Probe(std::uint64_t)>& probe) {
  FirstHit out;
  for (std::uint64_t i = lo; i <= hi && i >= lo; ++i) {
    ++out.scanned;
    const Probe r = probe(i);
    if (r == Probe::Yes) {
      out.index = i;
      return out;
    }
    if (r == Probe::Indeterminate) ++out.indeterminate;
    if (i == hi) break;
  }
  return out;
}

FirstHit first_hit_parallel(std::uint64_t lo, std::uint64_t hi, const std::function<Probe(std::uint64_t)>& probe,
                            const ParallelConfig& cfg, std::uint64_t chunk) {
  const int nthreads = threads(cfg);
  if (nthreads == 1 || hi < lo) return first_hit_serial(lo, hi, probe);
  chunk = std::max<std::uint64_t>(chunk, 1);
  const std::uint64_t wave_chunks = static_cast<std::uint64_t>(nthreads) * 4;
  FirstHit out;
  for (std::uint64_t start = lo; start <= hi;) {
    std::vector<FirstHit> results(wave_chunks);
    std::exception_ptr error;
    std::mutex mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
    for (std::uint64_t c = 0; c < wave_chunks; ++c) {
      const std::uint64_t b = start + c * chunk;
      if (b > hi || b < start) continue;
      const std::uint64_t e = std::min(hi, b + chunk - 1);
      try {
        results[c] = first_hit_serial(b, e, probe);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (const auto& r : results) {
      out.scanned += r.scanned;
      out.indeterminate += r.indeterminate;
      if (r.index) {
        out.index = r.index;
        return out;
      }
    }
    const std::uint64_t span = wave_chunks * chunk;
    if (hi - start < span) break;
    start += span;
  }
  return out;
}

}  // namespace pwalk::kernels
