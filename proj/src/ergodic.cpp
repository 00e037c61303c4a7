#include "pwalk/ergodic.hpp"

#include "pwalk/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

namespace pwalk {

namespace {

std::complex<double> unit(double phase) {
  return std::polar(1.0, 2 * std::numbers::pi * (phase - std::floor(phase)));
}

double dot(const std::vector<long>& m, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t j = 0; j < m.size(); ++j) s += double(m[j]) * x[j];
  return s;
}

}  // namespace

void TorusSystem::validate() const {
  if (dim == 0) throw ErgodicError("system needs a positive acting dimension");
  if (rows.empty()) throw ErgodicError("system needs at least one torus coordinate");
  for (const auto& r : rows)
    if (r.size() != dim)
      throw ErgodicError("action row of length " + std::to_string(r.size()) + ", expected " + std::to_string(dim));
  if (base.size() != rows.size()) throw ErgodicError("base point must have one coordinate per torus dimension");
}

std::vector<Frequency> TorusSystem::induced(const std::vector<long>& m) const {
  if (m.size() != rows.size()) throw ErgodicError("frequency of wrong length");
  std::vector<Frequency> out(dim);
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (m[j] != 0)
      for (std::size_t i = 0; i < dim; ++i) out[i] += Rational(m[j]) * rows[j][i];
  return out;
}

TrigPoly::TrigPoly(std::size_t torus_dim, std::vector<TrigTerm> terms) : torus_dim_(torus_dim) {
  std::map<std::vector<long>, std::complex<double>> merged;
  for (auto& t : terms) {
    if (t.m.size() != torus_dim_) throw ErgodicError("frequency of wrong length in trigonometric polynomial");
    merged[t.m] += t.c;
  }
  for (auto& [m, c] : merged)
    if (c != std::complex<double>(0)) terms_.push_back({m, c});
}

TrigPoly TrigPoly::constant(std::size_t torus_dim, std::complex<double> c) {
  return TrigPoly(torus_dim, {{std::vector<long>(torus_dim, 0), c}});
}

std::complex<double> TrigPoly::coefficient(const std::vector<long>& m) const {
  for (const auto& t : terms_)
    if (t.m == m) return t.c;
  return 0;
}

std::complex<double> TrigPoly::operator()(const std::vector<double>& x) const {
  kernels::CompensatedComplex acc;
  for (const auto& t : terms_) acc.add(t.c * unit(dot(t.m, x)));
  return acc.value();
}

std::complex<double> TrigPoly::mean() const { return coefficient(std::vector<long>(torus_dim_, 0)); }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (a.torus_dim_ != b.torus_dim_) throw ErgodicError("product of trigonometric polynomials on different tori");
  std::vector<TrigTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      std::vector<long> m(s.m);
      for (std::size_t j = 0; j < m.size(); ++j) m[j] += t.m[j];
      out.push_back({std::move(m), s.c * t.c});
    }
  return TrigPoly(a.torus_dim_, std::move(out));
}

bool operator==(const TrigPoly& a, const TrigPoly& b) {
  if (a.torus_dim_ != b.torus_dim_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::complex<double> inner(const TrigPoly& f, const TrigPoly& g) {
  std::complex<double> out = 0;
  for (const auto& t : f.terms()) out += t.c * std::conj(g.coefficient(t.m));
  return out;
}

double BoxIndicator::measure() const {
  double out = 1;
  for (double l : length) out *= l;
  return out;
}

void BoxIndicator::validate() const {
  if (start.empty() || start.size() != length.size()) throw ErgodicError("box needs one start and length per coordinate");
  for (double l : length)
    if (!(l > 0 && l <= 1)) throw ErgodicError("arc length must lie in (0, 1]");
}

TrigPoly fejer_approximation(const BoxIndicator& b, long order) {
  b.validate();
  if (order < 0) throw ErgodicError("approximation order must be non-negative");
  // one-dimensional coefficient lists, then tensor product
  std::vector<std::vector<std::pair<long, std::complex<double>>>> factors;
  for (std::size_t j = 0; j < b.torus_dim(); ++j) {
    std::vector<std::pair<long, std::complex<double>>> f;
    for (long m = -order; m <= order; ++m) {
      const double weight = 1.0 - double(std::labs(m)) / double(order + 1);
      std::complex<double> c;
      if (m == 0) {
        c = b.length[j];
      } else {
        const double w = 2 * std::numbers::pi * double(m);
        c = (unit(-double(m) * b.start[j]) - unit(-double(m) * (b.start[j] + b.length[j]))) /
            std::complex<double>(0, w);
      }
      f.emplace_back(m, weight * c);
    }
    factors.push_back(std::move(f));
  }
  TrigPoly out = TrigPoly::constant(b.torus_dim(), 1);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::vector<TrigTerm> terms;
    for (const auto& [m, c] : factors[j]) {
      std::vector<long> freq(b.torus_dim(), 0);
      freq[j] = m;
      terms.push_back({std::move(freq), c});
    }
    out = out * TrigPoly(b.torus_dim(), std::move(terms));
  }
  return out;
}

std::vector<CharacterInfo> classify_characters(const TorusSystem& sys, const TrigPoly& f) {
  sys.validate();
  if (f.torus_dim() != sys.torus_dim()) throw ErgodicError("observable lives on a torus of another dimension");
  std::vector<CharacterInfo> out;
  for (const auto& t : f.terms()) {
    CharacterInfo info;
    info.m = t.m;
    info.induced = sys.induced(t.m);
    info.rational = std::all_of(info.induced.begin(), info.induced.end(), [](const Frequency& x) { return x.is_rational(); });
    if (info.rational) {
      Integer k = 1;
      for (const auto& x : info.induced)
        mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.coeff(Basis::One).get_den_mpz_t());
      info.period = k;
    }
    out.push_back(std::move(info));
  }
  return out;
}

ClosedForm q_p_closed_form(const TorusSystem& sys, const TrigPoly& f, const PolyVector& p) {
  sys.validate();
  if (p.size() != sys.dim) throw ErgodicError("polynomial sequence has the wrong dimension");
  for (const auto& e : p.entries())
    if (!e.has_integer_coefficients()) throw ErgodicError("closed form needs p with integer coefficients");
  const PolySequence seq(p);
  const auto chars = classify_characters(sys, f);
  ClosedForm out;
  std::vector<TrigTerm> kept;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto& ch = chars[i];
    Multiplier mult{.m = ch.m, .rational = ch.rational, .exact = std::nullopt, .value = 0};
    if (ch.rational) {
      if (!ch.period->fits_ulong_p()) throw ErgodicError("character period too large");
      const unsigned long q = ch.period->get_ui();
      std::vector<Integer> r;
      for (const auto& x : ch.induced) r.push_back(Integer(x.coeff(Basis::One) * Rational(*ch.period)));
      CyclotomicNumber mean(q);
      const Rational weight(1, static_cast<unsigned long>(q));
      for (unsigned long n = 1; n <= q; ++n) {
        const auto v = seq.integer_at(Integer(n));
        Integer s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += r[j] * v[j];
        mpz_fdiv_r_ui(s.get_mpz_t(), s.get_mpz_t(), q);
        mean.add_root(s.get_ui(), weight);
      }
      mult.value = mean.to_complex();
      if (const auto exact = mean.as_rational()) mult.value = exact->get_d();
      if (!mean.is_zero()) kept.push_back({ch.m, f.terms()[i].c * mult.value});
      mult.exact = std::move(mean);
    }
    out.multipliers.push_back(std::move(mult));
  }
  out.limit = TrigPoly(f.torus_dim(), std::move(kept));
  return out;
}

TrigPoly rational_projection(const TorusSystem& sys, const TrigPoly& f) {
  const auto chars = classify_characters(sys, f);
  std::vector<TrigTerm> kept;
  for (std::size_t i = 0; i < chars.size(); ++i)
    if (chars[i].rational) kept.push_back(f.terms()[i]);
  return TrigPoly(f.torus_dim(), std::move(kept));
}

AverageResult empirical_average(const TorusSystem& sys, const Observable& f, const PolyVector& p, std::uint64_t N,
                                const ParallelConfig& cfg) {
  sys.validate();
  if (N < 1) throw ErgodicError("N must be at least 1");
  if (p.size() != sys.dim) throw ErgodicError("polynomial sequence has the wrong dimension");
  const PolySequence seq(p);
  AverageResult out;
  out.partitions = cfg.partitions;

  if (const auto* trig = std::get_if<TrigPoly>(&f)) {
    if (trig->torus_dim() != sys.torus_dim()) throw ErgodicError("observable lives on a torus of another dimension");
    std::optional<ClosedForm> closed;
    bool integral = true;
    for (const auto& e : p.entries()) integral = integral && e.has_integer_coefficients();
    if (integral) closed = q_p_closed_form(sys, *trig, p);
    kernels::CompensatedComplex value, predicted;
    kernels::CompensatedSum dist2;
    for (std::size_t i = 0; i < trig->terms().size(); ++i) {
      const auto& t = trig->terms()[i];
      const auto theta = sys.induced(t.m);
      std::complex<double> w = 1;
      if (!std::all_of(theta.begin(), theta.end(), [](const Frequency& x) { return x.is_zero(); }))
        w = kernels::mean_unit_phase_parallel(sequence_phases(seq, theta, 1, N, sys.digits, cfg), cfg);
      const std::complex<double> at_base = unit(dot(t.m, sys.base));
      value.add(t.c * at_base * w);
      if (closed) {
        const std::complex<double> mu = closed->multipliers[i].value;
        predicted.add(t.c * at_base * mu);
        dist2.add(std::norm(t.c) * std::norm(w - mu));
      }
    }
    out.value = value.value();
    if (closed) {
      out.predicted = predicted.value();
      out.l2_distance = std::sqrt(std::max(0.0, dist2.value()));
    }
    return out;
  }

  const auto& box = std::get<BoxIndicator>(f);
  box.validate();
  if (box.torus_dim() != sys.torus_dim()) throw ErgodicError("box lives on a torus of another dimension");
  std::vector<std::vector<double>> phases;
  for (const auto& row : sys.rows) phases.push_back(sequence_phases(seq, row, 1, N, sys.digits, cfg));
  const kernels::Box kb = box.box();
  std::vector<double> hits(N);
  kernels::parallel_for(N, cfg, [&](std::size_t n) {
    std::vector<double> x(sys.torus_dim());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = sys.base[j] + phases[j][n];
    hits[n] = kb.contains(x.data()) ? 1.0 : 0.0;
  });
  out.value = kernels::mean_parallel(hits, cfg);
  return out;
}

Integer choose_k(const TorusSystem& sys, const TrigPoly& f, double eps) {
  if (!(eps > 0)) throw ErgodicError("epsilon must be positive");
  const auto chars = classify_characters(sys, f);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < chars.size(); ++i)
    if (chars[i].rational) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(f.terms()[a].c) > std::abs(f.terms()[b].c);
  });
  double tail = 0;
  for (auto i : order) tail += std::norm(f.terms()[i].c);
  Integer k = 1;
  for (auto i : order) {
    if (2 * std::sqrt(std::max(0.0, tail)) < eps) break;
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), chars[i].period->get_mpz_t());
    tail -= std::norm(f.terms()[i].c);
  }
  return k;
}

namespace {

// Additive recurrence steps frac(phi_D^{-k}), phi_D the positive root of x^{D+1} = x + 1.
std::vector<double> kronecker_steps(std::size_t dim) {
  double phi = 2;
  for (int it = 0; it < 200; ++it) phi = std::pow(1 + phi, 1.0 / double(dim + 1));
  std::vector<double> out;
  for (std::size_t k = 1; k <= dim; ++k) {
    const double a = std::pow(phi, -double(k));
    out.push_back(a - std::floor(a));
  }
  return out;
}

}  // namespace

CorrelationResult correlation_average(const TorusSystem& sys, const BoxIndicator& b, const std::vector<PolyVector>& p,
                                      const std::vector<std::uint64_t>& N, const CorrelationOptions& opts) {
  sys.validate();
  b.validate();
  if (b.torus_dim() != sys.torus_dim()) throw ErgodicError("box lives on a torus of another dimension");
  if (p.empty()) throw ErgodicError("correlation needs m >= 1 polynomial sequences");
  if (N.size() != p.size()) throw ErgodicError("need one N_i per polynomial sequence");
  if (opts.samples < 1 || opts.replicates < 2) throw ErgodicError("need samples >= 1 and replicates >= 2");
  const std::size_t D = sys.torus_dim();

  std::vector<std::vector<double>> offsets;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].size() != sys.dim) throw ErgodicError("polynomial sequence has the wrong dimension");
    if (N[i] < 1) throw ErgodicError("N_i must be at least 1");
    const PolySequence seq(p[i]);
    if (!seq.integer_valued()) throw ErgodicError("correlation sequences must be integer-valued");
    std::vector<double> off(N[i] * D);
    for (std::size_t j = 0; j < D; ++j) {
      const auto ph = sequence_phases(seq, sys.rows[j], 1, N[i], sys.digits, opts.parallel);
      for (std::uint64_t n = 0; n < N[i]; ++n) off[n * D + j] = ph[n];
    }
    offsets.push_back(std::move(off));
  }

  const auto steps = kronecker_steps(D);
  const kernels::Box kb = b.box();
  CorrelationResult out;
  out.samples = opts.samples;
  out.replicates = opts.replicates;
  out.partitions = opts.parallel.partitions;
  std::vector<double> points(opts.samples * D);
  for (std::size_t r = 0; r < opts.replicates; ++r) {
    std::mt19937_64 rng(opts.seed * 1000003u + r);
    std::vector<double> shift(D);
    for (auto& s : shift) s = std::ldexp(double(rng() >> 11), -53);
    for (std::size_t k = 0; k < opts.samples; ++k)
      for (std::size_t j = 0; j < D; ++j) {
        const double x = shift[j] + double(k + 1) * steps[j];
        points[k * D + j] = x - std::floor(x);
      }
    const double sum = opts.serial_reference
                           ? kernels::correlation_sum_serial(points, offsets, kb, opts.parallel.partitions)
                           : kernels::correlation_sum_parallel(points, offsets, kb, opts.parallel);
    out.replicate_means.push_back(sum / double(opts.samples));
  }
  const double mean = std::accumulate(out.replicate_means.begin(), out.replicate_means.end(), 0.0) /
                      double(opts.replicates);
  double var = 0;
  for (double x : out.replicate_means) var += (x - mean) * (x - mean);
  var /= double(opts.replicates - 1);
  out.estimate = mean;
  out.std_error = std::sqrt(var / double(opts.replicates));
  return out;
}

}  // namespace pwalk
