#include "pwalk/cli.hpp"

#include "pwalk/config.hpp"
#include "pwalk/ergodic.hpp"
#include "pwalk/fleeing.hpp"
#include "pwalk/frequency.hpp"
#include "pwalk/generators.hpp"
#include "pwalk/lab.hpp"
#include "pwalk/matrix.hpp"
#include "pwalk/parse.hpp"
#include "pwalk/setmodel.hpp"
#include "pwalk/weyl.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace pwalk::cli {

const char* const kGrammar = R"G(expression grammar:
  expr   := ["+"|"-"] term (("+"|"-") term)*
  term   := factor (("*" factor) | ("/" integer))*
  factor := "-" factor | base ("^" integer)?
  base   := integer | identifier | "(" expr ")"
  lists are comma separated: "n, n^2"
frequencies: rationals (1/3, 0.25) and the constants sqrt2 sqrt3 sqrt5 golden pi pi-frac,
  combined with + - * and / by an integer: "2*sqrt3 - 1/2"
walk descriptors:
  xyP:<P in z>:<1|2>   bogolubov:<P in y>   unipotent:<matrix>   adjoint:<matrix>
  signature:<p>:<q>:<index>   file:<path>
matrices: [[1,2],[0,1]]
config files: "key = value" lines, "#" starts a comment; flags override keys
)G";

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit code 2: the computation ran but left something unresolved.
class Unresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::map<std::string, std::string> values;
  bool validate_only = false;

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = values.find(key); it != values.end()) return it->second;
    return std::nullopt;
  }
  std::string require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw UsageError("missing required option --" + flag_name(key));
  }
  static std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
  }
  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      if (!v->empty() && (*v)[0] == '-') throw std::invalid_argument("negative");
      const auto x = std::stoull(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      return x;
    } catch (const std::exception&) {
      throw UsageError("--" + flag_name(key) + " expects a non-negative integer, got '" + *v + "'");
    }
  }
  double real(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double x = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      return x;
    } catch (const std::exception&) {
      throw UsageError("--" + flag_name(key) + " expects a number, got '" + *v + "'");
    }
  }
  bool boolean(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw UsageError("--" + flag_name(key) + " expects true or false, got '" + *v + "'");
  }
  ParallelConfig parallel() const {
    ParallelConfig cfg;
    cfg.jobs = u64("jobs", 1);
    if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
    cfg.partitions = u64("partitions", 8);
    if (cfg.partitions < 1) throw UsageError("--partitions must be at least 1");
    return cfg;
  }
  unsigned digits() const {
    const auto d = u64("precision", 60);
    if (d < 20 || d > 10000) throw UsageError("--precision must lie in [20, 10000]");
    return static_cast<unsigned>(d);
  }
};

struct Io {
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> out_path, csv_path;

  void emit(const std::string& text) const {
    if (out_path) {
      std::ofstream f(*out_path);
      if (!f) throw UsageError("cannot write '" + *out_path + "'");
      f << text;
    } else {
      out << text;
    }
  }
  void emit_csv(const std::string& text) const {
    if (!csv_path) return;
    std::ofstream f(*csv_path);
    if (!f) throw UsageError("cannot write '" + *csv_path + "'");
    f << text;
  }
};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::pair<std::string, std::string>> keys;
  std::function<int(const Settings&, const Io&)> run;
};

const std::vector<std::pair<std::string, std::string>> kCommonKeys = {
    {"out", "write the report to this path"},
    {"csv", "write CSV rows to this path"},
    {"jobs", "worker threads (default 1)"},
    {"partitions", "reduction partitions (default 8)"},
    {"seed", "random seed (default 0)"},
    {"precision", "decimal digits for irrational phases (default 60)"},
    {"N_max", "search or depth bound"},
};

// ---------- parsing helpers ----------

std::vector<std::string> split(const std::string& text, char sep) { return split_top_level(text, sep); }

Integer parse_integer(const std::string& s) {
  const std::string t = trim(s);
  Integer x;
  if (t.empty() || x.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
    throw UsageError("expected an integer, got '" + s + "'");
  return x;
}

std::vector<Integer> parse_integer_list(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_integer(part));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(part, &pos));
      if (pos != part.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("expected a number, got '" + part + "'");
    }
  }
  return out;
}

// decimal, p/q, or mantissa e exponent
Rational parse_exact(const std::string& s) {
  const std::string t = trim(s);
  const auto e = t.find_first_of("eE");
  if (e == std::string::npos) return parse_rational(t);
  Rational mant = parse_rational(t.substr(0, e));
  const long ex = std::stol(t.substr(e + 1));
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(ex)));
  return ex >= 0 ? Rational(mant * Rational(p)) : Rational(mant / Rational(p));
}

MPoly parse_univariate(const std::string& text, const std::string& var) {
  return parse_poly(text, {var});
}

PolyVector parse_sequence(const std::string& text) {
  auto ids = collect_identifiers(text);
  if (ids.size() > 1) throw UsageError("polynomial sequence must use one variable: '" + text + "'");
  if (ids.empty()) ids = {"n"};
  return parse_poly_list(text, ids);
}

std::vector<std::vector<Frequency>> parse_rows(const std::string& text) {
  std::vector<std::vector<Frequency>> rows;
  for (const auto& r : split(text, ';')) rows.push_back(parse_frequency_list(r));
  if (rows.empty()) throw UsageError("expected at least one frequency row");
  return rows;
}

}  // namespace

Walk walk_from_descriptor(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw UsageError("walk descriptor '" + desc + "' has no kind prefix");
  const std::string kind = desc.substr(0, colon);
  const std::string rest = desc.substr(colon + 1);
  if (kind == "file") {
    std::ifstream in(rest);
    if (!in) throw UsageError("cannot open walk file '" + rest + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return Walk::deserialize(buf.str());
  }
  const auto parts = split(rest, ':');
  if (kind == "xyP") {
    if (parts.size() != 2 || (parts[1] != "1" && parts[1] != "2"))
      throw UsageError("expected xyP:<P in z>:<1|2>, got '" + desc + "'");
    const auto w = xy_minus_P_walks(parse_univariate(parts[0], "z"));
    return parts[1] == "1" ? w.s1 : w.s2;
  }
  if (kind == "bogolubov") {
    if (parts.size() != 1) throw UsageError("expected bogolubov:<P in y>, got '" + desc + "'");
    return bogolubov_walk(parse_univariate(parts[0], "y"));
  }
  if (kind == "unipotent") return unipotent_walk(IntMatrix::parse(rest));
  if (kind == "adjoint") return unipotent_walk(adjoint_action_matrix(IntMatrix::parse(rest)));
  if (kind == "signature") {
    if (parts.size() != 3) throw UsageError("expected signature:<p>:<q>:<index>, got '" + desc + "'");
    const auto p = parse_integer(parts[0]), q = parse_integer(parts[1]), i = parse_integer(parts[2]);
    if (p < 1 || q < 2) throw UsageError("signature needs p >= 1 and q >= 2");
    const auto sw = signature_form_walks(p.get_ui(), q.get_ui());
    if (i < 1 || i > Integer(static_cast<unsigned long>(sw.walks.size())))
      throw UsageError("signature walk index must lie in [1, " + std::to_string(sw.walks.size()) + "]");
    return sw.walks[i.get_ui() - 1];
  }
  throw UsageError("unknown walk kind '" + kind + "'");
}

namespace {

// ---------- set models and systems ----------

const std::vector<std::pair<std::string, std::string>> kModelKeys = {
    {"model", "bohr or window"},
    {"dimension", "ambient dimension d"},
    {"frequencies", "Bohr frequency rows, ';' between rows, ',' within"},
    {"eps", "arc radius per row (or one for all)"},
    {"centers", "arc center per row (default 0)"},
    {"dense_image", "declare the Bohr image dense (default true)"},
    {"guard", "guard band (default 1e-18)"},
    {"side", "window side R"},
    {"density", "random window density"},
    {"points", "explicit window points, ';' separated"},
};

SetModel build_model(const Settings& s) {
  const std::string model = s.require("model");
  const auto dim_key = s.get("dimension");
  if (model == "bohr") {
    BohrSet b;
    b.rows = parse_rows(s.require("frequencies"));
    b.dim = b.rows.front().size();
    if (dim_key && parse_integer(*dim_key) != Integer(static_cast<unsigned long>(b.dim)))
      throw UsageError("dimension does not match the frequency rows");
    std::vector<Rational> eps;
    for (const auto& e : split(s.require("eps"), ',')) eps.push_back(parse_exact(e));
    if (eps.size() == 1) eps.assign(b.rows.size(), eps.front());
    b.radii = eps;
    if (const auto c = s.get("centers")) {
      for (const auto& e : split(*c, ',')) b.centers.push_back(parse_exact(e));
    } else {
      b.centers.assign(b.rows.size(), Rational(0));
    }
    b.dense_image = s.boolean("dense_image", true);
    if (const auto g = s.get("guard")) b.guard = parse_exact(*g);
    b.digits = s.digits();
    return SetModel(std::move(b));
  }
  if (model == "window") {
    const auto side = s.u64("side", 0);
    if (!dim_key) throw UsageError("window models need --dimension");
    const auto dim = parse_integer(*dim_key);
    if (dim < 1 || dim > 8) throw UsageError("window dimension must lie in [1, 8]");
    if (side < 1) throw UsageError("window models need --side >= 1");
    if (const auto pts = s.get("points")) {
      std::vector<WindowSet::Point> points;
      for (const auto& p : split(*pts, ';')) {
        WindowSet::Point q;
        for (const auto& x : parse_integer_list(p)) q.push_back(x.get_si());
        if (q.size() != dim.get_ui()) throw UsageError("window point of the wrong dimension");
        points.push_back(std::move(q));
      }
      return SetModel(WindowSet::from_points(dim.get_ui(), side, points));
    }
    return SetModel(WindowSet::random(dim.get_ui(), side, s.real("density", 0.5), s.u64("seed", 0)));
  }
  throw UsageError("unknown model '" + model + "' (bohr or window)");
}

const std::vector<std::pair<std::string, std::string>> kSystemKeys = {
    {"A", "action matrix rows, ';' between rows, ',' within"},
    {"x0", "base point (default 0)"},
};

TorusSystem build_system(const Settings& s) {
  TorusSystem sys;
  sys.rows = parse_rows(s.require("A"));
  sys.dim = sys.rows.front().size();
  sys.base = s.get("x0") ? parse_double_list(*s.get("x0")) : std::vector<double>(sys.rows.size(), 0.0);
  sys.digits = s.digits();
  sys.validate();
  return sys;
}

TrigPoly parse_trig(const std::string& text, std::size_t torus_dim) {
  std::vector<TrigTerm> terms;
  for (const auto& t : split(text, ';')) {
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw UsageError("trig term '" + t + "' needs 'm : coefficient'");
    TrigTerm term;
    for (const auto& x : parse_integer_list(t.substr(0, colon))) term.m.push_back(x.get_si());
    std::istringstream c(t.substr(colon + 1));
    double re = 0, im = 0;
    if (!(c >> re)) throw UsageError("bad coefficient in trig term '" + t + "'");
    c >> im;
    term.c = {re, im};
    terms.push_back(std::move(term));
  }
  return TrigPoly(torus_dim, std::move(terms));
}

BoxIndicator parse_box(const std::string& text) {
  BoxIndicator b;
  for (const auto& arc : split(text, ';')) {
    std::istringstream in(arc);
    double start = 0, length = 0;
    if (!(in >> start >> length)) throw UsageError("box arc '" + arc + "' needs 'start length'");
    b.start.push_back(start);
    b.length.push_back(length);
  }
  b.validate();
  return b;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string fmt(std::complex<double> z) { return fmt(z.real()) + " " + fmt(z.imag()); }

std::string join(const std::vector<Integer>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
  return out + ")";
}

int validated(const Io& io) {
  io.out << "valid\n";
  return 0;
}

// ---------- commands ----------

int cmd_construct_walk(const Settings& s, const Io& io) {
  std::vector<Walk> gens;
  for (const auto& desc : split(s.require("gens"), ';')) gens.push_back(walk_from_descriptor(desc));
  const auto v = parse_integer_list(s.require("v"));
  FleeingOptions opts;
  if (s.get("N_max")) opts.max_depth = s.u64("N_max", 0);
  if (s.get("R_max")) opts.max_base = static_cast<std::uint32_t>(s.u64("R_max", 0));
  if (gens.empty()) throw UsageError("need at least one generator");
  for (const auto& g : gens)
    if (g.dim() != v.size()) throw UsageError("start vector length does not match the generators");
  if (s.validate_only) return validated(io);
  try {
    io.emit(construct_fleeing_walk(gens, v, opts).report());
  } catch (const FleeingError& e) {
    throw Unresolved(e.what());
  }
  return 0;
}

int cmd_check_fleeing(const Settings& s, const Io& io) {
  const std::string text = s.require("poly");
  auto vars = collect_identifiers(text);
  if (const auto v = s.get("vars")) vars = split(*v, ',');
  const PolyVector p = parse_poly_list(text, vars);
  if (s.validate_only) return validated(io);
  const auto basis = affine_annihilator(p);
  std::ostringstream os;
  os << "fleeing: " << (basis.empty() ? "true" : "false") << "\n";
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p.size(); ++i) names.push_back("p" + std::to_string(i));
  for (const auto& f : basis) os << "annihilator: " << f.to_string(names) << " = 0\n";
  io.emit(os.str());
  return 0;
}

int cmd_preserves(const Settings& s, const Io& io) {
  const Walk w = walk_from_descriptor(s.require("walk_from"));
  const MPoly form = parse_poly(s.require("form"), w.coords());
  if (s.validate_only) return validated(io);
  io.emit(std::string("preserved: ") + (preserves(form, w) ? "true" : "false") + "\n");
  return 0;
}

int cmd_walk_apply(const Settings& s, const Io& io) {
  const Walk w = walk_from_descriptor(s.require("walk_from"));
  const Integer n = parse_integer(s.require("n"));
  const auto v = parse_integer_list(s.require("v"));
  if (n < 0) throw UsageError("--n must be non-negative");
  if (v.size() != w.dim()) throw UsageError("--v has the wrong length for this walk");
  if (s.validate_only) return validated(io);
  io.emit(join(walk_apply(w, n, v)) + "\n");
  return 0;
}

std::vector<std::pair<std::string, std::string>> experiment_keys(const char* poly_help) {
  std::vector<std::pair<std::string, std::string>> keys = {
      {"P", poly_help}, {"k", "scaling k (default 1)"}, {"targets", "comma separated target values"},
      {"R_max", "exponent base cap"}, {"pair_budget", "pair-location budget for Bohr witnesses"}};
  keys.insert(keys.end(), kModelKeys.begin(), kModelKeys.end());
  return keys;
}

int run_experiment(const Settings& s, const Io& io, bool magyar) {
  const MPoly p = parse_univariate(s.require("P"), magyar ? "z" : "y");
  const Integer k = parse_integer(s.get("k").value_or("1"));
  const auto targets = parse_integer_list(s.require("targets"));
  const SetModel oracle = build_model(s);
  ExperimentOptions opts;
  opts.n_max = s.u64("N_max", 100000);
  opts.parallel = s.parallel();
  opts.seed = s.u64("seed", 0);
  opts.pair_budget = s.u64("pair_budget", opts.pair_budget);
  if (s.get("R_max")) opts.fleeing.max_base = static_cast<std::uint32_t>(s.u64("R_max", 0));
  if (s.validate_only) {
    // preconditions only: the generators and target divisibility
    if (magyar) {
      xy_minus_P_walks(p);
      for (const auto& t : targets)
        if (t == 0 || !mpz_divisible_p(t.get_mpz_t(), Integer(k * k).get_mpz_t()))
          throw ExperimentError("target " + t.get_str() + " is not a non-zero multiple of k^2");
    } else {
      bogolubov_walk(p);
      for (const auto& t : targets)
        if (!mpz_divisible_p(t.get_mpz_t(), k.get_mpz_t()))
          throw ExperimentError("target " + t.get_str() + " is not divisible by k");
    }
    return validated(io);
  }
  const auto rep = magyar ? magyar_experiment(p, oracle, k, targets, opts) : bogolubov_experiment(p, oracle, k, targets, opts);
  std::string text = rep.text();
  for (const auto& r : rep.records)
    if (r.status == SearchStatus::Found) {
      const auto check = revalidate(r, rep.form, rep.coords, oracle);
      text += "revalidate " + r.target.get_str() + ": " + (check.ok ? "ok" : "FAILED") + " (" + check.message + ")\n";
      if (!check.ok) throw ExperimentError("witness for target " + r.target.get_str() + " failed re-validation");
    }
  io.emit(text);
  io.emit_csv(rep.csv());
  return rep.all_found() ? 0 : 2;
}

int cmd_weyl(const Settings& s, const Io& io) {
  const PolyVector p = parse_sequence(s.require("p"));
  const auto theta = parse_frequency_list(s.require("theta"));
  if (theta.size() != p.size()) throw UsageError("--theta needs one entry per polynomial");
  const auto N = s.u64("N", 0);
  if (N < 1) throw UsageError("--N must be at least 1");
  const auto cfg = s.parallel();
  if (s.validate_only) return validated(io);
  const auto avg = weyl_sum(p, theta, N, cfg, s.digits());
  std::ostringstream os;
  os << "average: " << fmt(avg) << "\nmodulus: " << fmt(std::abs(avg)) << "\npartitions: " << cfg.partitions << "\n";
  const bool rational = std::all_of(theta.begin(), theta.end(), [](const Frequency& f) { return f.is_rational(); });
  if (rational && PolySequence(p).integer_valued()) {
    std::vector<Rational> r;
    for (const auto& f : theta) r.push_back(f.coeff(Basis::One));
    const auto exact = weyl_sum_exact(p, r, N);
    os << "exact: " << exact.to_string() << "\nexact-zero: " << (exact.is_zero() ? "true" : "false") << "\n";
  }
  io.emit(os.str());
  io.emit_csv("N,re,im,modulus\n" + std::to_string(N) + "," + fmt(avg.real()) + "," + fmt(avg.imag()) + "," +
              fmt(std::abs(avg)) + "\n");
  return 0;
}

std::vector<std::uint64_t> doubling_schedule(std::uint64_t N) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : {N / 4, N / 2, N})
    if (m >= 1 && (out.empty() || out.back() != m)) out.push_back(m);
  return out;
}

int cmd_ergodic_avg(const Settings& s, const Io& io) {
  const TorusSystem sys = build_system(s);
  const PolyVector p = parse_sequence(s.require("p"));
  if (p.size() != sys.dim) throw UsageError("--p must have one entry per column of A");
  const std::string kind = s.get("observable").value_or("trig");
  Observable f;
  if (kind == "trig")
    f = parse_trig(s.require("terms"), sys.torus_dim());
  else if (kind == "box")
    f = parse_box(s.require("box"));
  else
    throw UsageError("--observable must be trig or box");
  const auto N = s.u64("N", 0);
  if (N < 1) throw UsageError("--N must be at least 1");
  const auto cfg = s.parallel();
  if (s.validate_only) return validated(io);

  std::ostringstream os, csv;
  csv << "N,estimate_re,estimate_im,predicted_re,predicted_im,abs_error,std_error\n";
  if (const auto* trig = std::get_if<TrigPoly>(&f)) {
    for (const auto& ch : classify_characters(sys, *trig)) {
      os << "character (";
      for (std::size_t j = 0; j < ch.m.size(); ++j) os << (j ? ", " : "") << ch.m[j];
      os << "): " << (ch.rational ? "rational period " + ch.period->get_str() : std::string("irrational")) << "\n";
    }
    bool integral = true;
    for (const auto& e : p.entries()) integral = integral && e.has_integer_coefficients();
    if (integral)
      for (const auto& m : q_p_closed_form(sys, *trig, p).multipliers)
        os << "multiplier: " << (m.exact ? m.exact->to_string() : std::string("0")) << "\n";
  }
  for (auto n : doubling_schedule(N)) {
    const auto r = empirical_average(sys, f, p, n, cfg);
    os << "N " << n << ": estimate " << fmt(r.value);
    csv << n << "," << fmt(r.value.real()) << "," << fmt(r.value.imag()) << ",";
    if (r.predicted) {
      const double err = std::abs(r.value - *r.predicted);
      os << " predicted " << fmt(*r.predicted) << " abs-error " << fmt(err) << " l2-distance " << fmt(*r.l2_distance);
      csv << fmt(r.predicted->real()) << "," << fmt(r.predicted->imag()) << "," << fmt(err) << ",";
    } else {
      csv << ",,,";
    }
    os << "\n";
    csv << "\n";
  }
  os << "partitions: " << cfg.partitions << "\n";
  io.emit(os.str());
  io.emit_csv(csv.str());
  return 0;
}

int cmd_correlate(const Settings& s, const Io& io) {
  const TorusSystem sys = build_system(s);
  const BoxIndicator box = parse_box(s.require("box"));
  if (box.torus_dim() != sys.torus_dim()) throw UsageError("--box needs one arc per row of A");
  std::vector<PolyVector> ps;
  for (const auto& part : split(s.require("p"), ';')) ps.push_back(parse_sequence(part));
  for (const auto& p : ps)
    if (p.size() != sys.dim) throw UsageError("each --p sequence needs one entry per column of A");
  auto Ns = parse_integer_list(s.require("N"));
  if (Ns.size() == 1) Ns.assign(ps.size(), Ns.front());
  if (Ns.size() != ps.size()) throw UsageError("--N needs one value per sequence (or one for all)");
  std::vector<std::uint64_t> N;
  for (const auto& x : Ns) {
    if (x < 1 || !x.fits_ulong_p()) throw UsageError("--N values must be positive");
    N.push_back(x.get_ui());
  }
  const double eps = s.real("eps", 0.02);
  if (!(eps > 0)) throw UsageError("--eps must be positive");
  CorrelationOptions opts;
  opts.samples = s.u64("samples", 4096);
  opts.replicates = s.u64("replicates", 16);
  opts.seed = s.u64("seed", 0);
  opts.parallel = s.parallel();
  const long order = static_cast<long>(s.u64("fejer_order", 8));
  if (s.validate_only) return validated(io);

  Integer k;
  const std::string k_text = s.get("k").value_or("auto");
  if (k_text == "auto")
    k = choose_k(sys, fejer_approximation(box, order), eps);
  else
    k = parse_integer(k_text);
  if (k < 1) throw UsageError("--k must be positive");
  for (auto& p : ps) {
    const std::string var = p.vars().empty() ? "n" : p.vars().front();
    const MPoly kn = MPoly::variable(var, p.vars().empty() ? std::vector<std::string>{"n"} : p.vars()).scaled(Rational(k));
    std::vector<MPoly> scaled;
    for (const auto& e : p.entries()) scaled.push_back(substitute(e, {{var, kn}}));
    p = PolyVector(std::move(scaled));
  }
  const double bound = std::pow(box.measure(), double(ps.size() + 1)) - eps;
  std::ostringstream os, csv;
  os << "k: " << k.get_str() << "\nmeasure: " << fmt(box.measure()) << "\nbound: " << fmt(bound) << "\n";
  csv << "N,estimate,predicted,abs_error,std_error\n";
  std::optional<CorrelationResult> last;
  for (int halve : {1, 0}) {
    std::vector<std::uint64_t> n = N;
    if (halve)
      for (auto& x : n) x = std::max<std::uint64_t>(1, x / 2);
    const auto r = correlation_average(sys, box, ps, n, opts);
    std::string label;
    for (std::size_t i = 0; i < n.size(); ++i) label += (i ? "x" : "") + std::to_string(n[i]);
    os << "N " << label << ": estimate " << fmt(r.estimate) << " std-error " << fmt(r.std_error) << "\n";
    csv << label << "," << fmt(r.estimate) << "," << fmt(bound + eps) << "," << fmt(std::abs(r.estimate - bound - eps))
        << "," << fmt(r.std_error) << "\n";
    last = r;
  }
  os << "bound-holds: " << (last->estimate > bound ? "true" : "false") << "\nsamples: " << last->samples
     << " replicates: " << last->replicates << " partitions: " << last->partitions << " seed: " << opts.seed << "\n";
  io.emit(os.str());
  io.emit_csv(csv.str());
  return 0;
}

int cmd_gen(const Settings& s, const Io& io) {
  const std::string family = s.require("family");
  std::ostringstream os;
  const auto walk_block = [&](const Walk& w) { os << w.serialize(); };
  if (family == "unipotent" || family == "adjoint") {
    IntMatrix m = IntMatrix::parse(s.require("matrix"));
    if (family == "adjoint") m = adjoint_action_matrix(m);
    const Walk w = unipotent_walk(m);
    if (s.validate_only) return validated(io);
    os << "matrix " << m.to_string() << "\n";
    walk_block(w);
  } else if (family == "xyP") {
    const auto w = xy_minus_P_walks(parse_univariate(s.require("P"), "z"));
    if (s.validate_only) return validated(io);
    os << "form " << w.form.to_string() << "\nH " << w.h.to_string() << "\n";
    walk_block(w.s1);
    walk_block(w.s2);
  } else if (family == "bogolubov") {
    const MPoly p = parse_univariate(s.require("P"), "y");
    const Walk w = bogolubov_walk(p);
    if (s.validate_only) return validated(io);
    os << "form " << bogolubov_form(p).to_string() << "\n";
    walk_block(w);
  } else if (family == "signature") {
    const auto p = s.u64("p", 0), q = s.u64("q", 0);
    if (p < 1 || q < 2) throw UsageError("--p must be >= 1 and --q >= 2");
    if (s.validate_only) return validated(io);
    const auto sw = signature_form_walks(p, q);
    os << "form " << sw.form.to_string() << "\n";
    for (std::size_t i = 0; i < sw.walks.size(); ++i) {
      os << "matrix " << sw.matrices[i].to_string() << "\n";
      walk_block(sw.walks[i]);
    }
  } else {
    throw UsageError("unknown --family '" + family + "' (unipotent, adjoint, xyP, bogolubov, signature)");
  }
  io.emit(os.str());
  return 0;
}

std::vector<Command> commands() {
  std::vector<Command> out;
  out.push_back({"construct-walk", "build a hyperplane-fleeing walk and print its certificate",
                 {{"gens", "generator walk descriptors, ';' separated"}, {"v", "start vector"}, {"R_max", "exponent base cap"}},
                 cmd_construct_walk});
  out.push_back({"check-fleeing", "decide whether a polynomial vector is hyperplane-fleeing",
                 {{"poly", "comma separated polynomials"}, {"vars", "variable names (default: as they appear)"}},
                 cmd_check_fleeing});
  out.push_back({"preserves", "check F(S(t) x) = F(x) symbolically",
                 {{"form", "polynomial in the walk's coordinates"}, {"walk_from", "walk descriptor"}}, cmd_preserves});
  out.push_back({"walk-apply", "print S(n) v",
                 {{"walk_from", "walk descriptor"}, {"n", "time parameter"}, {"v", "start vector"}}, cmd_walk_apply});
  out.push_back({"magyar", "twisted recurrence experiment for x y - P(z)", experiment_keys("P as a polynomial in z"),
                 [](const Settings& s, const Io& io) { return run_experiment(s, io, true); }});
  out.push_back({"bogolubov", "twisted recurrence experiment for x - P(y)", experiment_keys("P as a polynomial in y"),
                 [](const Settings& s, const Io& io) { return run_experiment(s, io, false); }});
  out.push_back({"weyl", "Weyl average (1/N) sum e(<p(n), theta>)",
                 {{"p", "polynomial sequence"}, {"theta", "frequencies"}, {"N", "number of terms"}}, cmd_weyl});
  {
    std::vector<std::pair<std::string, std::string>> keys = kSystemKeys;
    keys.insert(keys.end(), {{"observable", "trig or box"},
                             {"terms", "trig terms 'm1,m2 : re [im]', ';' separated"},
                             {"box", "arcs 'start length', ';' separated"},
                             {"p", "polynomial sequence"},
                             {"N", "largest N (N/4 and N/2 are reported too)"}});
    out.push_back({"ergodic-avg", "empirical polynomial ergodic average against the closed form", keys, cmd_ergodic_avg});
  }
  {
    std::vector<std::pair<std::string, std::string>> keys = kSystemKeys;
    keys.insert(keys.end(), {{"box", "arcs 'start length', ';' separated"},
                             {"p", "polynomial sequences, ';' separated"},
                             {"N", "N_i values (or one for all)"},
                             {"k", "scaling k or auto (default auto)"},
                             {"eps", "epsilon (default 0.02)"},
                             {"fejer_order", "trigonometric approximation order for auto k (default 8)"},
                             {"samples", "quasi-Monte Carlo points per replicate (default 4096)"},
                             {"replicates", "random shifts (default 16)"}});
    out.push_back({"correlate", "multiple correlation average against the lower bound", keys, cmd_correlate});
  }
  out.push_back({"gen", "emit generator walks and matrices",
                 {{"family", "unipotent, adjoint, xyP, bogolubov or signature"},
                  {"matrix", "integer matrix"},
                  {"P", "profile polynomial"},
                  {"p", "positive signature count"},
                  {"q", "negative signature count"}},
                 cmd_gen});
  return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << "error: empty argument list\n";
    return 1;
  }
  CLI::App app{"Exact polynomial walks, fleeing constructions and twisted recurrence experiments", "pwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pwalk 1.0");
  app.footer(kGrammar);

  const auto cmds = commands();
  struct Bound {
    CLI::App* sub;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, std::string> storage;
    std::string config_path;
    bool validate_only = false;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& c : cmds) {
    auto b = std::make_unique<Bound>();
    b->sub = app.add_subcommand(c.name, c.help);
    b->sub->add_option("--config", b->config_path, "key = value file; flags override its keys");
    b->sub->add_flag("--validate-only", b->validate_only, "parse and check preconditions without computing");
    auto keys = c.keys;
    keys.insert(keys.end(), kCommonKeys.begin(), kCommonKeys.end());
    for (const auto& [key, help] : keys) {
      if (b->options.count(key)) continue;
      b->storage[key];
      b->options[key] = b->sub->add_option("--" + Settings::flag_name(key), b->storage[key], help);
    }
    bound.push_back(std::move(b));
  }

  std::vector<char*> argv;
  std::vector<std::string> copy = args;
  for (auto& a : copy) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "pwalk 1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << kGrammar;
    return 1;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    auto& b = *bound[i];
    if (!b.sub->parsed()) continue;
    try {
      Settings settings;
      settings.validate_only = b.validate_only;
      if (!b.config_path.empty()) {
        const Config cfg = Config::load(b.config_path);
        std::set<std::string> allowed;
        for (const auto& [key, opt] : b.options) allowed.insert(key);
        cfg.require_known(allowed);
        settings.values = cfg.values();
      }
      for (const auto& [key, opt] : b.options)
        if (opt->count() > 0) settings.values[key] = b.storage[key];
      Io io{out, err, settings.get("out"), settings.get("csv")};
      return cmds[i].run(settings, io);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n\n" << kGrammar;
      return 1;
    } catch (const Unresolved& e) {
      err << "unresolved: " << e.what() << "\n";
      return 2;
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return 1;
    } catch (const ParseError& e) {
      err << "parse error at " << e.position() << ": " << e.what() << "\n\n" << kGrammar;
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  err << "usage error: no subcommand\n";
  return 1;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace pwalk::cli
