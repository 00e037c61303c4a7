#pragma once

#include "pwalk/cyclotomic.hpp"
#include "pwalk/frequency.hpp"
#include "pwalk/kernels.hpp"
#include "pwalk/mpoly.hpp"

#include <complex>
#include <optional>
#include <variant>
#include <vector>

namespace pwalk {

class ErgodicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T^v x = x + A v mod 1 on T^D, A a D x d matrix of frequencies.
struct TorusSystem {
  std::size_t dim = 0;
  std::vector<std::vector<Frequency>> rows;
  std::vector<double> base;  // x0
  unsigned digits = 60;

  std::size_t torus_dim() const { return rows.size(); }
  void validate() const;
  /// A^T m.
  std::vector<Frequency> induced(const std::vector<long>& m) const;
};

struct TrigTerm {
  std::vector<long> m;
  std::complex<double> c;
};

/// sum_m c_m e(<m, x>) with distinct frequencies and non-zero coefficients.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(std::size_t torus_dim, std::vector<TrigTerm> terms);
  static TrigPoly constant(std::size_t torus_dim, std::complex<double> c);

  std::size_t torus_dim() const { return torus_dim_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::complex<double> coefficient(const std::vector<long>& m) const;
  std::complex<double> operator()(const std::vector<double>& x) const;
  std::complex<double> mean() const;

  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend bool operator==(const TrigPoly& a, const TrigPoly& b);

 private:
  std::size_t torus_dim_ = 0;
  std::vector<TrigTerm> terms_;  // sorted by m
};

/// <f, g> = integral of f conj(g).
std::complex<double> inner(const TrigPoly& f, const TrigPoly& g);

/// Product of arcs [start_j, start_j + length_j) mod 1.
struct BoxIndicator {
  std::vector<double> start;
  std::vector<double> length;

  std::size_t torus_dim() const { return start.size(); }
  double measure() const;
  void validate() const;
  kernels::Box box() const { return {start, length}; }
};

/// Fejer mean of order K of the box's Fourier series; non-negative.
TrigPoly fejer_approximation(const BoxIndicator& b, long order);

using Observable = std::variant<TrigPoly, BoxIndicator>;

struct CharacterInfo {
  std::vector<long> m;
  std::vector<Frequency> induced;
  bool rational = false;
  std::optional<Integer> period;
};

std::vector<CharacterInfo> classify_characters(const TorusSystem& sys, const TrigPoly& f);

struct Multiplier {
  std::vector<long> m;
  bool rational = false;
  /// mean of chi(p(n)) over one period, rational characters only
  std::optional<CyclotomicNumber> exact;
  std::complex<double> value;
};

struct ClosedForm {
  TrigPoly limit;
  std::vector<Multiplier> multipliers;  // one per term of f
};

/// Limit of (1/N) sum T^{p(n)} f. Requires p with integer coefficients.
ClosedForm q_p_closed_form(const TorusSystem& sys, const TrigPoly& f, const PolyVector& p);

TrigPoly rational_projection(const TorusSystem& sys, const TrigPoly& f);

struct AverageResult {
  std::complex<double> value;
  std::optional<std::complex<double>> predicted;  // TrigPoly only
  std::optional<double> l2_distance;              // TrigPoly only
  std::size_t partitions = 0;
};

/// (1/N) sum_{n=1}^N f(x0 + A p(n)); for TrigPoly also the L2 distance of the
/// averaged function to the closed form, computed over frequencies.
AverageResult empirical_average(const TorusSystem& sys, const Observable& f, const PolyVector& p, std::uint64_t N,
                                const ParallelConfig& cfg = {});

/// lcm of k_chi over the rational characters needed so that the excluded tail
/// satisfies 2 sqrt(sum |c|^2) < eps.
Integer choose_k(const TorusSystem& sys, const TrigPoly& f, double eps);

struct CorrelationOptions {
  std::size_t samples = 4096;   // per replicate
  std::size_t replicates = 16;
  std::uint64_t seed = 1;
  ParallelConfig parallel;
  bool serial_reference = false;
};

struct CorrelationResult {
  double estimate = 0;
  double std_error = 0;
  std::vector<double> replicate_means;
  std::size_t samples = 0;
  std::size_t replicates = 0;
  std::size_t partitions = 0;
};

/// (1/(N_1...N_m)) sum over n_i of the measure of B and T^{-P_i(n_i)} B,
/// estimated with randomly shifted Kronecker point sets.
CorrelationResult correlation_average(const TorusSystem& sys, const BoxIndicator& b, const std::vector<PolyVector>& p,
                                      const std::vector<std::uint64_t>& N, const CorrelationOptions& opts = {});

}  // namespace pwalk
