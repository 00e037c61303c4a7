// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "pwalk/ergodic.hpp"
#include "pwalk/fleeing.hpp"
#include "pwalk/generators.hpp"
#include "pwalk/lab.hpp"
#include "pwalk/parse.hpp"
#include "pwalk/setmodel.hpp"
#include "pwalk/weyl.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pwalk;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
    ++checks_;
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " (" << checks_ - failed_ << "/" << checks_ << " checks)";
    for (const auto& f : failures_) os << "; failed: " << f;
    return {failed_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Integer> ints(std::initializer_list<long> l) {
  std::vector<Integer> out;
  for (long x : l) out.push_back(Integer(x));
  return out;
}

std::vector<Integer> targets_pm5() {
  std::vector<Integer> t;
  for (long a = 1; a <= 5; ++a) {
    t.push_back(Integer(a));
    t.push_back(Integer(-a));
  }
  return t;
}

std::vector<Walk> zoo() {
  std::vector<Walk> out;
  for (const char* p : {"z^2", "z^3", "2*z^2 - 3*z^3"}) {
    const auto w = xy_minus_P_walks(parse_poly(p, {"z"}));
    out.push_back(w.s1);
    out.push_back(w.s2);
  }
  out.push_back(unipotent_walk(IntMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
  out.push_back(unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 1}, {0, 1}})));
  out.push_back(unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 0}, {1, 1}})));
  const auto sig = signature_form_walks(1, 2);
  out.insert(out.end(), sig.walks.begin(), sig.walks.end());
  return out;
}

// Independent rank test for {1, p_1, ..., p_d} over the coefficient space.
bool affinely_independent(const PolyVector& p) { return affine_annihilator(p).empty(); }

Outcome symbolic_preservation() {
  const auto t0 = Clock::now();
  Checker c;
  for (const char* text : {"z^2", "z^3", "z^4", "2*z^2 - 3*z^3", "z^5"}) {
    const auto P = parse_poly(text, {"z"});
    const auto w = xy_minus_P_walks(P);
    c.expect(preserves(w.form, w.s1), std::string("S1 for ") + text);
    c.expect(preserves(w.form, w.s2), std::string("S2 for ") + text);
    const auto Py = substitute(P, {{"z", MPoly::variable("y", {"y"})}}).with_vars({"y"});
    c.expect(preserves(bogolubov_form(Py), bogolubov_walk(Py)), std::string("Bogolubov for ") + text);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime under 5 s");
  std::ostringstream os;
  os << "15 symbolic identities in " << secs << " s";
  return c.done(os.str());
}

Outcome walk_algebra() {
  Checker c;
  const auto z = zoo();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, z.size() - 1);
  std::uniform_int_distribution<long> small(-6, 6), nn(0, 6), kk(1, 20), n50(0, 50);
  std::uniform_int_distribution<std::uint32_t> ll(1, 3);
  auto rv = [&](long mult) {
    std::vector<Integer> v;
    for (int i = 0; i < 3; ++i) v.push_back(Integer(small(rng) * mult));
    return v;
  };
  for (int i = 0; i < 100; ++i) {
    const auto& a = z[pick(rng)];
    const auto& b = z[pick(rng)];
    const Integer n(nn(rng));
    const auto v = rv(1);
    const bool comp = walk_apply(walk_compose(a, b), n, v) == walk_apply(a, n, walk_apply(b, n, v));
    const std::uint32_t ell = ll(rng);
    Integer npow;
    mpz_pow_ui(npow.get_mpz_t(), n.get_mpz_t(), ell);
    const bool rep = walk_apply(walk_reparam(a, ell), n, v) == walk_apply(a, npow, v);
    c.expect(comp && rep, "composition/reparametrization sample " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    const auto& s = z[pick(rng)];
    const long k = kk(rng);
    const auto v = rv(k);
    const auto img = walk_apply(s, Integer(k * n50(rng)), v);
    bool ok = walk_scaling_certificate(s, i).holds;
    for (const auto& x : img) ok = ok && (x % k == 0);
    c.expect(ok, "scaling sample " + std::to_string(i));
  }
  return c.done("100 composition/reparametrization and 100 scaling samples");
}

bool certificate_valid(const FleeingCertificate& cert, const std::vector<Integer>& v, Checker& c,
                       const std::string& label) {
  bool ok = cert.annihilator_basis.empty() && is_fleeing(cert.orbit_poly) && affinely_independent(cert.orbit_poly);
  ok = ok && walk_orbit(cert.final_walk, v) == cert.orbit_poly;
  for (std::size_t i = 1; i < cert.exponents.size(); ++i) ok = ok && cert.exponents[i - 1] < cert.exponents[i];
  bool monotone = true;
  for (std::size_t i = 1; i < cert.trace.size(); ++i) monotone = monotone && cert.trace[i] <= cert.trace[i - 1];
  c.expect(ok, label + " certificate");
  c.expect(monotone, label + " trace monotone");
  return ok && monotone;
}

Outcome fleeing_constructor() {
  const auto t0 = Clock::now();
  Checker c;
  const auto b = bogolubov_walk(parse_poly("y^2", {"y"}));
  const auto ca = construct_fleeing_walk({b}, ints({0, 0}));
  certificate_valid(ca, ints({0, 0}), c, "(a)");
  c.expect(ca.depth == 1, "(a) depth 1");

  const auto w = xy_minus_P_walks(parse_poly("z^2", {"z"}));
  const auto cb = construct_fleeing_walk({w.s1, w.s2}, ints({1, 0, 0}));
  certificate_valid(cb, ints({1, 0, 0}), c, "(b)");
  c.expect(cb.depth <= 2, "(b) depth at most 2");
  if (cb.depth == 2) {
    const auto& u = cb.multi_orbit.vars();
    const bool orbit = cb.multi_orbit[0] == parse_poly("1 + 2*t_1*t_2 + t_1^2*t_2^2", u) &&
                       cb.multi_orbit[1] == parse_poly("t_1^2", u) &&
                       cb.multi_orbit[2] == parse_poly("t_1 + t_1^2*t_2", u);
    c.expect(orbit, "(b) symbolic orbit");
  }

  const auto a1 = unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 1}, {0, 1}}));
  const auto a2 = unipotent_walk(adjoint_action_matrix(IntMatrix{{1, 0}, {1, 1}}));
  std::size_t maxdepth = 0;
  for (const auto& v : {ints({1, 0, 0}), ints({0, 1, 0}), ints({0, 0, 1})}) {
    const auto cc = construct_fleeing_walk({a1, a2}, v);
    certificate_valid(cc, v, c, "(c) v=(" + v[0].get_str() + "," + v[1].get_str() + "," + v[2].get_str() + ")");
    maxdepth = std::max(maxdepth, cc.depth);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime under 30 s");
  std::ostringstream os;
  os << "depths a=" << ca.depth << " b=" << cb.depth << " c<=" << maxdepth << " in " << secs << " s";
  return c.done(os.str());
}

BohrSet bohr_set(std::vector<std::string> names) {
  BohrSet b;
  b.dim = names.size();
  std::vector<Frequency> row;
  for (const auto& n : names) row.push_back(Frequency::named(n));
  b.rows = {row};
  b.centers = {0};
  b.radii = {Rational(1, 5)};
  return b;
}

Outcome magyar() {
  const auto t0 = Clock::now();
  Checker c;
  const SetModel oracle(bohr_set({"sqrt2", "sqrt3", "sqrt5"}));
  ExperimentOptions opts;
  opts.n_max = 100000;
  const auto rep = magyar_experiment(parse_poly("z^2", {"z"}), oracle, Integer(1), targets_pm5(), opts);
  std::uint64_t worst = 0;
  for (const auto& r : rep.records) {
    const std::string t = r.target.get_str();
    c.expect(r.status == SearchStatus::Found, "target " + t + " found");
    if (r.status != SearchStatus::Found) continue;
    worst = std::max(worst, *r.n);
    c.expect(*r.n <= 100000, "target " + t + " n bound");
    const Integer f = r.witness[0] * r.witness[1] - r.witness[2] * r.witness[2];
    c.expect(f == r.target, "target " + t + " exact value");
    c.expect(revalidate(r, rep.form, rep.coords, oracle).ok, "target " + t + " revalidated");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 120.0, "runtime under 2 min");
  std::ostringstream os;
  os << "10 targets, largest witness n=" << worst << ", " << secs << " s";
  return c.done(os.str());
}

Outcome bogolubov() {
  Checker c;
  const SetModel oracle(bohr_set({"sqrt2", "sqrt3"}));
  const auto rep = bogolubov_experiment(parse_poly("y^2", {"y"}), oracle, Integer(1), targets_pm5());
  std::uint64_t worst = 0;
  for (const auto& r : rep.records) {
    const std::string t = r.target.get_str();
    c.expect(r.status == SearchStatus::Found, "target " + t + " found");
    if (r.status != SearchStatus::Found) continue;
    worst = std::max(worst, *r.n);
    c.expect(r.witness[0] - r.witness[1] * r.witness[1] == r.target, "target " + t + " exact value");
    c.expect(revalidate(r, rep.form, rep.coords, oracle).ok, "target " + t + " revalidated");
  }
  return c.done("10 targets, largest witness n=" + std::to_string(worst));
}

Outcome weyl() {
  Checker c;
  const auto a = std::abs(weyl_sum(parse_poly_list("n^2", {"n"}), {Frequency::named("sqrt2")}, 100000));
  const auto b = std::abs(weyl_sum(parse_poly_list("n^2, n^3", {"n"}),
                                   {Frequency::named("sqrt2"), Frequency::named("sqrt3")}, 100000));
  const bool zero = weyl_sum_exact(parse_poly_list("n", {"n"}), {Rational(1, 3)}, 30000).is_zero();
  c.expect(a <= 0.05, "n^2 sqrt2");
  c.expect(b <= 0.05, "(n^2, n^3) (sqrt2, sqrt3)");
  c.expect(zero, "exact zero at 1/3");
  std::ostringstream os;
  os << "|S1|=" << a << " |S2|=" << b << " exact-zero=" << (zero ? "yes" : "no");
  return c.done(os.str());
}

Outcome closed_form() {
  Checker c;
  double worst = 0;
  for (long k : {2, 3, 4, 6, 12}) {
    TorusSystem s;
    s.dim = 1;
    s.rows = {{Frequency(Rational(1, k))}, {Frequency::named("sqrt2")}};
    s.base = {0.125, 0.3};
    const TrigPoly f(2, {{{1, 0}, 1.0}, {{0, 1}, 0.5}, {{1, 1}, 0.25}, {{0, 0}, 0.5}});
    const auto p = parse_poly_list(std::to_string(k) + "*n + " + std::to_string(k) + "*n^3", {"n"});
    const auto cf = q_p_closed_form(s, f, p);
    for (const auto& m : cf.multipliers)
      if (m.m == std::vector<long>{1, 0})
        c.expect(m.exact && m.exact->as_rational() == Rational(1), "k=" + std::to_string(k) + " multiplier 1");
    const auto avg = empirical_average(s, f, p, 100000);
    const double gap = std::abs(avg.value - *avg.predicted);
    worst = std::max(worst, gap);
    c.expect(gap < 0.02, "k=" + std::to_string(k) + " empirical agreement");
  }
  TorusSystem s3;
  s3.dim = 1;
  s3.rows = {{Frequency(Rational(1, 3))}};
  s3.base = {0.2};
  const TrigPoly g(1, {{{1}, 1.0}});
  const auto cf = q_p_closed_form(s3, g, parse_poly_list("n", {"n"}));
  c.expect(cf.multipliers.at(0).exact && cf.multipliers[0].exact->is_zero(), "k=3 p=n multiplier 0");
  const auto avg = empirical_average(s3, g, parse_poly_list("n", {"n"}), 100000);
  const double gap = std::abs(avg.value - *avg.predicted);
  worst = std::max(worst, gap);
  c.expect(gap < 0.02, "k=3 p=n empirical agreement");
  std::ostringstream os;
  os << "largest empirical gap " << worst;
  return c.done(os.str());
}

Outcome correlation() {
  Checker c;
  TorusSystem s;
  s.dim = 2;
  s.rows = {{Frequency::named("sqrt2"), Frequency::named("sqrt3")}};
  s.base = {0};
  const BoxIndicator box{{0.0}, {0.3}};
  const double eps = 0.02;
  const Integer k = choose_k(s, fejer_approximation(box, 8), eps);

  const auto b = bogolubov_walk(parse_poly("y^2", {"y"}));
  const auto cert = construct_fleeing_walk({b}, ints({0, 0}));
  const auto scaled = walk_dilate(cert.final_walk, k);
  const auto orbit = walk_orbit(scaled, ints({0, 0}));
  const auto r = correlation_average(s, box, {orbit, orbit}, {2000, 2000});
  const double bound = std::pow(box.measure(), 3) - eps;
  c.expect(r.estimate > bound, "C above bound");
  c.expect(r.std_error < 0.003, "standard error below 0.003");
  std::ostringstream os;
  os << "k=" << k.get_str() << " C=" << r.estimate << " se=" << r.std_error << " bound=" << bound;
  return c.done(os.str());
}

Outcome signature_generators() {
  Checker c;
  std::size_t total = 0;
  for (auto [p, q] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 2}, {1, 3}}) {
    const auto s = signature_form_walks(p, q);
    const std::size_t d = p + q;
    for (std::size_t i = 0; i < s.matrices.size(); ++i) {
      const auto& m = s.matrices[i];
      const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ") #" + std::to_string(i);
      c.expect((m - IntMatrix::identity(d)).pow(3).is_zero() && m.determinant() == 1, tag + " unipotent");
      c.expect(preserves(s.form, s.walks[i]), tag + " preserves Q");
      ++total;
    }
    if (p == 1 && q == 2)
      c.expect(!s.matrices.empty() && s.matrices[0] == IntMatrix{{3, -2, 2}, {2, -1, 2}, {2, -2, 1}},
               "(1,2) sample matrix");
  }
  return c.done(std::to_string(total) + " generator matrices");
}

Outcome window_oracle() {
  Checker c;
  std::mt19937_64 rng(777);
  std::size_t queries = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    std::uniform_int_distribution<std::size_t> sides(2, 30);
    const std::size_t side = sides(rng);
    const double cells = std::pow(double(side), double(dim));
    std::uniform_real_distribution<double> u(0.05, 0.9);
    const double density = std::min(u(rng), 600.0 / cells);
    const auto b = WindowSet::random(dim, side, density, 1000 + trial);

    std::set<std::vector<long>> diffs;
    for (const auto& x : b.points())
      for (const auto& y : b.points()) {
        std::vector<long> w(dim);
        for (std::size_t i = 0; i < dim; ++i) w[i] = y[i] - x[i];
        diffs.insert(w);
      }
    const long r = long(side);
    std::vector<long> w(dim, -r);
    bool agree = true;
    while (true) {
      std::vector<Integer> wi(w.begin(), w.end());
      agree = agree && (b.contains_difference(wi) == (diffs.count(w) > 0));
      ++queries;
      std::size_t i = 0;
      while (i < dim && w[i] == r) w[i++] = -r;
      if (i == dim) break;
      ++w[i];
    }
    c.expect(agree, "window " + std::to_string(trial));
  }
  return c.done("50 windows, " + std::to_string(queries) + " queries");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"symbolic preservation", symbolic_preservation},
      {"walk algebra battery", walk_algebra},
      {"fleeing constructor", fleeing_constructor},
      {"magyar desk run", magyar},
      {"bogolubov desk run", bogolubov},
      {"weyl decay", weyl},
      {"closed form identity", closed_form},
      {"correlation bound", correlation},
      {"signature generators", signature_generators},
      {"window oracle equivalence", window_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
