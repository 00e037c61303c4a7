#include "pwalk/lab.hpp"

#include "pwalk/generators.hpp"
#include "pwalk/weyl.hpp"

#include <chrono>
#include <sstream>

namespace pwalk {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::Exhausted: return "Exhausted";
    case SearchStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

SearchResult twisted_search(const Walk& s, const std::vector<Integer>& v, const SetModel& oracle, std::uint64_t n_max,
                            const ParallelConfig& cfg) {
  if (v.size() != oracle.dim())
    throw ExperimentError("start vector has dimension " + std::to_string(v.size()) + ", set model has " +
                          std::to_string(oracle.dim()));
  if (s.dim() != v.size()) throw ExperimentError("walk dimension does not match the start vector");
  const PolySequence orbit(walk_orbit(s, v, "n"));
  SearchResult out;
  if (n_max < 1) return out;
  const auto probe = [&](std::uint64_t n) {
    switch (diffset_membership(oracle, orbit.integer_at(Integer(static_cast<unsigned long>(n))))) {
      case Membership::Yes: return kernels::Probe::Yes;
      case Membership::No: return kernels::Probe::No;
      case Membership::Indeterminate: return kernels::Probe::Indeterminate;
    }
    return kernels::Probe::No;
  };
  const auto hit = kernels::first_hit_parallel(1, n_max, probe, cfg);
  out.scanned = hit.scanned;
  out.indeterminate = hit.indeterminate;
  if (hit.index) {
    out.status = SearchStatus::Found;
    out.n = hit.index;
    out.point = orbit.integer_at(Integer(static_cast<unsigned long>(*hit.index)));
  } else if (hit.scanned > 0 && hit.indeterminate == hit.scanned) {
    out.status = SearchStatus::Indeterminate;
  }
  return out;
}

namespace {

std::string join(const std::vector<Integer>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].get_str();
  return out;
}

Integer evaluate_form(const MPoly& form, const std::vector<std::string>& coords, const std::vector<Integer>& w) {
  Point pt;
  for (std::size_t i = 0; i < coords.size(); ++i) pt[coords[i]] = Rational(w[i]);
  const Rational r = evaluate(form, pt);
  if (r.get_den() != 1) throw ExperimentError("form took a non-integer value");
  return r.get_num();
}

std::optional<std::vector<Integer>> locate_pair(const SetModel& oracle, const std::vector<Integer>& w,
                                                std::uint64_t budget) {
  if (oracle.is_window()) {
    const auto b = oracle.window().difference_pair(w);
    if (!b) return std::nullopt;
    std::vector<Integer> out;
    for (long x : *b) out.push_back(Integer(x));
    return out;
  }
  return bohr_difference_pair(oracle.bohr(), w, budget);
}

void check_parabola(const MPoly& p, const std::string& var) {
  const auto used = p.used_vars();
  if (used.size() > 1 || (used.size() == 1 && used.front() != var))
    throw ExperimentError("P must be a polynomial in " + var + ": " + p.to_string());
}

struct Setup {
  std::vector<Walk> gens;
  std::vector<Integer> start;
};

ExperimentReport run(const std::string& kind, const MPoly& form, const std::vector<std::string>& coords,
                     const SetModel& oracle, const Integer& k, const std::vector<Integer>& targets,
                     const std::vector<Setup>& setups, const ExperimentOptions& opts) {
  ExperimentReport rep;
  rep.kind = kind;
  rep.seed = opts.seed;
  rep.form = form;
  rep.coords = coords;
  rep.config = {{"form", form.to_string()},      {"k", k.get_str()},
                {"N_max", std::to_string(opts.n_max)}, {"oracle", oracle.describe()},
                {"jobs", std::to_string(opts.parallel.jobs)}};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    WitnessRecord rec;
    rec.target = targets[i];
    rec.start = setups[i].start;
    const auto cert = construct_fleeing_walk(setups[i].gens, setups[i].start, opts.fleeing);
    rec.depth = cert.depth;
    rec.exponents = cert.exponents;
    const Walk walk = walk_dilate(cert.final_walk, k);
    const auto found = twisted_search(walk, rec.start, oracle, opts.n_max, opts.parallel);
    rec.status = found.status;
    rec.scanned = found.scanned;
    rec.indeterminate = found.indeterminate;
    if (found.status == SearchStatus::Found) {
      rec.n = found.n;
      rec.witness = found.point;
      rec.f_value = evaluate_form(form, coords, rec.witness);
      if (*rec.f_value != rec.target)
        throw ExperimentError("internal error: F(witness) = " + rec.f_value->get_str() + " differs from target " +
                              rec.target.get_str());
      for (const auto& x : rec.witness)
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()))
          throw ExperimentError("internal error: witness left k Z^d");
      rec.pair_base = locate_pair(oracle, rec.witness, opts.pair_budget);
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace

bool ExperimentReport::all_found() const {
  for (const auto& r : records)
    if (r.status != SearchStatus::Found) return false;
  return true;
}

std::string ExperimentReport::text() const {
  std::ostringstream os;
  os << kind << " experiment\n";
  for (const auto& [key, value] : config) os << "  " << key << " = " << value << "\n";
  os << "  seed = " << seed << "\n";
  for (const auto& r : records) {
    os << "target " << r.target.get_str() << ": " << to_string(r.status);
    os << " start (" << join(r.start, ", ") << ") depth " << r.depth << " exponents";
    for (auto e : r.exponents) os << ' ' << e;
    if (r.n) {
      os << " n " << *r.n << " witness (" << join(r.witness, ", ") << ") F " << r.f_value->get_str();
      if (r.pair_base) os << " pair-base (" << join(*r.pair_base, ", ") << ")";
    } else {
      os << " scanned " << r.scanned << " indeterminate " << r.indeterminate;
    }
    os << " [millis " << static_cast<long long>(r.millis) << "]\n";
  }
  return os.str();
}

std::string ExperimentReport::csv() const {
  std::ostringstream os;
  os << "target,status,n";
  for (std::size_t i = 1; i <= coords.size(); ++i) os << ",w" << i;
  os << ",f_value,millis\n";
  for (const auto& r : records) {
    os << r.target.get_str() << ',' << to_string(r.status) << ',';
    if (r.n) os << *r.n;
    for (std::size_t i = 0; i < coords.size(); ++i) os << ',' << (r.n ? r.witness[i].get_str() : "");
    os << ',' << (r.f_value ? r.f_value->get_str() : "") << ',' << static_cast<long long>(r.millis) << "\n";
  }
  return os.str();
}

ExperimentReport magyar_experiment(const MPoly& p, const SetModel& oracle, const Integer& k,
                                   const std::vector<Integer>& targets, const ExperimentOptions& opts) {
  check_parabola(p, "z");
  if (k < 1) throw ExperimentError("k must be a positive integer");
  if (oracle.dim() != 3) throw ExperimentError("the Magyar experiment needs a set model in Z^3");
  const auto walks = xy_minus_P_walks(p.with_vars({"z"}));
  const Integer k2 = k * k;
  std::vector<Setup> setups;
  for (const auto& t : targets) {
    if (t == 0) throw ExperimentError("targets must be non-zero");
    if (!mpz_divisible_p(t.get_mpz_t(), k2.get_mpz_t()))
      throw ExperimentError("target " + t.get_str() + " is not divisible by k^2 = " + k2.get_str());
    const Integer a = t / k2;
    setups.push_back({{walks.s1, walks.s2}, {k, k * a, Integer(0)}});
  }
  return run("magyar", walks.form, {"x", "y", "z"}, oracle, k, targets, setups, opts);
}

ExperimentReport bogolubov_experiment(const MPoly& p, const SetModel& oracle, const Integer& k,
                                      const std::vector<Integer>& targets, const ExperimentOptions& opts) {
  check_parabola(p, "y");
  if (k < 1) throw ExperimentError("k must be a positive integer");
  if (oracle.dim() != 2) throw ExperimentError("the Bogolubov experiment needs a set model in Z^2");
  const MPoly py = p.with_vars({"y"});
  const Walk walk = bogolubov_walk(py);
  std::vector<Setup> setups;
  for (const auto& c : targets) {
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
      throw ExperimentError("target " + c.get_str() + " is not divisible by k = " + k.get_str());
    setups.push_back({{walk}, {c, Integer(0)}});
  }
  return run("bogolubov", bogolubov_form(py), {"x", "y"}, oracle, k, targets, setups, opts);
}

Revalidation revalidate(const WitnessRecord& r, const MPoly& form, const std::vector<std::string>& coords,
                        const SetModel& oracle) {
  if (r.status != SearchStatus::Found) return {false, "record is not Found"};
  if (r.witness.size() != coords.size()) return {false, "witness has the wrong dimension"};
  // direct substitution, independent of the walk machinery
  Bindings b;
  for (std::size_t i = 0; i < coords.size(); ++i) b.emplace_back(coords[i], MPoly::constant(Rational(r.witness[i])));
  const MPoly value = substitute(form.with_vars(coords), b);
  if (!value.is_constant() || value.constant_term() != Rational(r.target))
    return {false, "F(w) = " + value.to_string() + ", expected " + r.target.get_str()};

  if (oracle.is_window()) {
    const auto& win = oracle.window();
    for (const auto& base : win.points()) {
      WindowSet::Point q(base.size());
      bool inside = true;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const Integer s = Integer(base[i]) + r.witness[i];
        if (!s.fits_slong_p()) {
          inside = false;
          break;
        }
        q[i] = s.get_si();
      }
      if (inside && win.contains(q)) return {true, "pair found by enumeration"};
    }
    return {false, "no pair b, b + w in the window"};
  }

  BohrSet fine = oracle.bohr();
  fine.digits += 20;
  if (r.pair_base) {
    std::vector<Integer> shifted(r.witness.size());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = (*r.pair_base)[i] + r.witness[i];
    if (bohr_membership(fine, *r.pair_base) == Membership::Yes && bohr_membership(fine, shifted) == Membership::Yes)
      return {true, "explicit pair re-checked at higher precision"};
    return {false, "recorded pair does not re-validate"};
  }
  if (bohr_difference(fine, r.witness) == Membership::Yes) return {true, "arc overlap re-checked at higher precision"};
  return {false, "difference test fails at higher precision"};
}

}  // namespace pwalk
