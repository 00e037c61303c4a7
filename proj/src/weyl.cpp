#include "pwalk/weyl.hpp"

#include "pwalk/generators.hpp"
#include "pwalk/integer_valued.hpp"

#include <algorithm>
#include <stdexcept>

namespace pwalk {

namespace {

std::size_t bit_length(const Integer& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

}  // namespace

PolySequence::PolySequence(const PolyVector& p) {
  std::vector<std::string> used;
  for (const auto& e : p.entries())
    for (const auto& v : e.used_vars())
      if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
  if (used.size() > 1) throw PolyError("expected a polynomial sequence in one variable: " + p.to_string());
  for (const auto& e : p.entries()) {
    const MPoly single = used.empty() ? MPoly::constant(e.constant_term()) : e.with_vars(used);
    evals_.emplace_back(single);
    coeffs_.push_back(univariate_coefficients(single));
    if (!pwalk::integer_valued(single).integer_valued) integer_valued_ = false;
  }
}

std::vector<Rational> PolySequence::operator()(const Integer& n) const {
  std::vector<Rational> out;
  out.reserve(evals_.size());
  for (const auto& e : evals_) out.push_back(e(n));
  return out;
}

std::vector<Integer> PolySequence::integer_at(const Integer& n) const {
  std::vector<Integer> out;
  out.reserve(evals_.size());
  for (const auto& e : evals_) out.push_back(e.integer_at(n));
  return out;
}

std::size_t PolySequence::magnitude_bits(const Integer& N) const {
  std::size_t best = 0;
  const std::size_t nbits = bit_length(N) + 1;
  for (const auto& c : coeffs_) {
    std::size_t bits = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) bits = std::max(bits, bit_length(c[k].get_num()) + k * nbits);
    best = std::max(best, bits + bit_length(Integer(static_cast<unsigned long>(c.size()))));
  }
  return best;
}

std::vector<double> sequence_phases(const PolySequence& p, const std::vector<Frequency>& theta, std::uint64_t first,
                                    std::uint64_t count, unsigned digits, const ParallelConfig& cfg) {
  if (theta.size() != p.dim())
    throw std::invalid_argument("theta has " + std::to_string(theta.size()) + " entries, p has " +
                                std::to_string(p.dim()));
  const Integer last(static_cast<unsigned long>(first + count));
  const PhaseKernel kernel(theta, digits, p.magnitude_bits(last));
  std::vector<double> out(count);
  const bool integral = p.integer_valued();
  kernels::parallel_for(count, cfg, [&](std::size_t i) {
    const Integer n(static_cast<unsigned long>(first + i));
    out[i] = integral ? kernel(p.integer_at(n)).value() : kernel(p(n)).value();
  });
  return out;
}

std::complex<double> weyl_sum(const PolyVector& p, const std::vector<Frequency>& theta, std::uint64_t N,
                              const ParallelConfig& cfg, unsigned digits) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  const auto phases = sequence_phases(PolySequence(p), theta, 1, N, digits, cfg);
  return kernels::mean_unit_phase_parallel(phases, cfg);
}

std::complex<double> weyl_sum_serial(const PolyVector& p, const std::vector<Frequency>& theta, std::uint64_t N,
                                     std::size_t partitions, unsigned digits) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  const auto phases = sequence_phases(PolySequence(p), theta, 1, N, digits, ParallelConfig{1, partitions});
  return kernels::mean_unit_phase_serial(phases, partitions);
}

CyclotomicNumber weyl_sum_exact(const PolyVector& p, const std::vector<Rational>& theta, std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  const PolySequence seq(p);
  if (!seq.integer_valued()) throw std::invalid_argument("exact Weyl average needs an integer-valued p");
  if (theta.size() != seq.dim()) throw std::invalid_argument("theta length does not match p");
  Integer q = 1;
  for (const auto& t : theta) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), t.get_den_mpz_t());
  if (!q.fits_ulong_p()) throw std::invalid_argument("denominator too large");
  std::vector<Integer> scaled;
  for (const auto& t : theta) scaled.push_back(Integer(t * Rational(q)));
  const unsigned long qq = q.get_ui();
  CyclotomicNumber acc(qq);
  std::vector<std::uint64_t> counts(qq, 0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const auto v = seq.integer_at(Integer(static_cast<unsigned long>(n)));
    Integer r = 0;
    for (std::size_t i = 0; i < v.size(); ++i) r += scaled[i] * v[i];
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    ++counts[r.get_ui()];
  }
  for (unsigned long j = 0; j < qq; ++j)
    if (counts[j]) acc.add_root(j, Rational(Integer(static_cast<unsigned long>(counts[j])), Integer(static_cast<unsigned long>(N))));
  return acc;
}

}  // namespace pwalk
