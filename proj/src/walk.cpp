#include "pwalk/walk.hpp"

#include "pwalk/integer_valued.hpp"
#include "pwalk/parse.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pwalk {

const char* to_string(Integrality i) {
  switch (i) {
    case Integrality::IntegerCoefficients: return "integer-coefficients";
    case Integrality::MahlerCertified: return "mahler-certified";
    case Integrality::ClosedUnderComposition: return "closed-under-composition";
  }
  return "?";
}

namespace {

std::vector<std::string> make_universe(const std::string& time_var,
                                       const std::vector<std::string>& coords) {
  std::vector<std::string> u;
  u.reserve(coords.size() + 1);
  u.push_back(time_var);
  u.insert(u.end(), coords.begin(), coords.end());
  return u;
}

bool all_integer_coefficients(const std::vector<MPoly>& entries) {
  return std::all_of(entries.begin(), entries.end(),
                     [](const MPoly& p) { return p.has_integer_coefficients(); });
}

}  // namespace

Walk::Walk(std::string time_var, std::vector<std::string> coords, std::vector<MPoly> entries)
    : coords_(std::move(coords)), universe_(make_universe(time_var, coords_)) {
  if (coords_.empty()) throw WalkError("walk dimension must be positive");
  if (entries.size() != coords_.size())
    throw WalkError("walk needs one entry per coordinate (" + std::to_string(coords_.size()) +
                    "), got " + std::to_string(entries.size()));
  entries_.reserve(entries.size());
  try {
    for (auto& e : entries) entries_.push_back(e.with_vars(universe_));
  } catch (const PolyError& e) {
    throw WalkError(std::string("walk entry outside (time, coords): ") + e.what());
  }
  check_identity_at_zero();
  if (all_integer_coefficients(entries_)) {
    integrality_ = Integrality::IntegerCoefficients;
  } else {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto cert = integer_valued(entries_[i]);
      if (!cert.integer_valued)
        throw WalkError("walk entry " + std::to_string(i + 1) + " is not integer-valued");
    }
    integrality_ = Integrality::MahlerCertified;
  }
}

Walk::Walk(Trusted, std::string time_var, std::vector<std::string> coords,
           std::vector<MPoly> entries, Integrality integrality)
    : coords_(std::move(coords)),
      universe_(make_universe(time_var, coords_)),
      integrality_(integrality) {
  entries_.reserve(entries.size());
  for (auto& e : entries) entries_.push_back(e.with_vars(universe_));
  check_identity_at_zero();
  if (all_integer_coefficients(entries_)) integrality_ = Integrality::IntegerCoefficients;
}

void Walk::check_identity_at_zero() const {
  const Bindings at_zero{{time_var(), MPoly::constant(0)}};
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const MPoly base = substitute(entries_[i], at_zero);
    const MPoly expected = MPoly::variable(coords_[i], base.vars());
    if (!(base - expected).is_zero())
      throw WalkError("walk is not the identity at time 0 (entry " + std::to_string(i + 1) +
                      " gives " + base.to_string() + ")");
  }
}

Walk Walk::identity(std::vector<std::string> coords, std::string time_var) {
  const auto u = make_universe(time_var, coords);
  std::vector<MPoly> entries;
  for (const auto& c : coords) entries.push_back(MPoly::variable(c, u));
  return Walk(std::move(time_var), std::move(coords), std::move(entries));
}

Walk Walk::with_coords(std::vector<std::string> coords) const {
  if (coords.size() != coords_.size()) throw WalkError("dimension mismatch in coordinate rename");
  if (coords == coords_) return *this;
  // simultaneous substitution
  Bindings rename;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    rename.emplace_back(coords_[i], MPoly::variable(coords[i], make_universe(time_var(), coords)));
  std::vector<MPoly> renamed;
  for (const auto& e : entries_) renamed.push_back(substitute(e, rename));
  return Walk(Trusted{}, time_var(), std::move(coords), std::move(renamed), integrality_);
}

std::string Walk::serialize() const {
  std::ostringstream os;
  os << "walk " << dim() << '\n' << "time " << time_var() << '\n' << "coords";
  for (const auto& c : coords_) os << ' ' << c;
  os << '\n';
  for (const auto& e : entries_) os << e.to_string() << '\n';
  return os.str();
}

Walk Walk::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(is, line)) {
      auto t = trim(line);
      if (!t.empty() && t[0] != '#') return t;
    }
    throw WalkError("truncated walk record");
  };
  std::istringstream header(next_line());
  std::string tag;
  std::size_t d = 0;
  if (!(header >> tag >> d) || tag != "walk" || d == 0) throw WalkError("expected 'walk <dim>'");
  std::istringstream time_line(next_line());
  std::string time_var;
  if (!(time_line >> tag >> time_var) || tag != "time") throw WalkError("expected 'time <var>'");
  std::istringstream coord_line(next_line());
  coord_line >> tag;
  if (tag != "coords") throw WalkError("expected 'coords <names>'");
  std::vector<std::string> coords;
  for (std::string c; coord_line >> c;) coords.push_back(c);
  if (coords.size() != d) throw WalkError("coordinate count does not match dimension");
  const auto u = make_universe(time_var, coords);
  std::vector<MPoly> entries;
  for (std::size_t i = 0; i < d; ++i) entries.push_back(parse_poly(next_line(), u));
  return Walk(time_var, coords, std::move(entries));
}

std::vector<Integer> walk_apply(const Walk& s, const Integer& n, const std::vector<Integer>& v) {
  if (v.size() != s.dim())
    throw WalkError("dimension mismatch: walk has " + std::to_string(s.dim()) +
                    " coordinates, vector has " + std::to_string(v.size()));
  if (n < 0) throw WalkError("walk time must be non-negative");
  std::vector<Rational> point;
  point.reserve(v.size() + 1);
  point.emplace_back(n);
  for (const auto& x : v) point.emplace_back(x);
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& e : s.entries()) {
    const Rational r = evaluate(e, point);
    if (r.get_den() != 1) throw WalkError("walk produced a non-integer coordinate");
    out.push_back(r.get_num());
  }
  return out;
}

Walk walk_compose(const Walk& s, const Walk& r) {
  if (s.dim() != r.dim()) throw WalkError("dimension mismatch in walk composition");
  const Walk rr = r.with_coords(s.coords());
  Bindings b;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    // R's time variable is aligned with S's by universe position
    MPoly e = rr.entry(i);
    if (rr.time_var() != s.time_var())
      e = substitute(e, {{rr.time_var(), MPoly::variable(s.time_var(), s.universe())}});
    b.emplace_back(s.coords()[i], e.with_vars(s.universe()));
  }
  // shared time variable binds to itself
  b.emplace_back(s.time_var(), MPoly::variable(s.time_var(), s.universe()));
  std::vector<MPoly> entries;
  entries.reserve(s.dim());
  for (const auto& e : s.entries()) entries.push_back(substitute(e, b));
  return Walk(Walk::Trusted{}, s.time_var(), s.coords(), std::move(entries),
              Integrality::ClosedUnderComposition);
}

Walk walk_reparam(const Walk& s, std::uint32_t ell) {
  if (ell < 1) throw WalkError("reparametrization exponent must be at least 1");
  if (ell == 1) return s;
  const Bindings b{{s.time_var(), MPoly::variable(s.time_var(), s.universe()).pow(ell)}};
  std::vector<MPoly> entries;
  for (const auto& e : s.entries()) entries.push_back(substitute(e, b));
  return Walk(Walk::Trusted{}, s.time_var(), s.coords(), std::move(entries),
              s.integrality() == Integrality::IntegerCoefficients
                  ? Integrality::IntegerCoefficients
                  : Integrality::ClosedUnderComposition);
}

Walk walk_dilate(const Walk& s, const Integer& k) {
  if (k < 1) throw WalkError("time dilation factor must be positive");
  if (k == 1) return s;
  const Bindings b{{s.time_var(), MPoly::variable(s.time_var(), s.universe()).scaled(Rational(k))}};
  std::vector<MPoly> entries;
  for (const auto& e : s.entries()) entries.push_back(substitute(e, b));
  return Walk(Walk::Trusted{}, s.time_var(), s.coords(), std::move(entries),
              Integrality::ClosedUnderComposition);
}

ScalingCertificate constant_term_check(const std::vector<MPoly>& entries) {
  ScalingCertificate cert;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Rational c = entries[i].constant_term();
    if (c != 0) {
      cert.holds = false;
      cert.offending_entry = i;
      cert.offending_constant = c;
      cert.message = "entry " + std::to_string(i + 1) + " has constant term " + c.get_str();
      return cert;
    }
  }
  return cert;
}

ScalingCertificate walk_scaling_certificate(const Walk& s, std::uint64_t seed,
                                            std::size_t samples) {
  ScalingCertificate cert = constant_term_check(s.entries());
  if (!cert.holds) return cert;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k_dist(1, 20);
  std::uniform_int_distribution<int> n_dist(0, 50);
  std::uniform_int_distribution<int> v_dist(-10, 10);
  for (std::size_t trial = 0; trial < samples; ++trial) {
    const Integer k = k_dist(rng);
    const Integer n = n_dist(rng);
    std::vector<Integer> v(s.dim());
    for (auto& x : v) x = k * v_dist(rng);
    const auto image = walk_apply(s, k * n, v);
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (!mpz_divisible_p(image[i].get_mpz_t(), k.get_mpz_t())) {
        cert.holds = false;
        cert.offending_entry = i;
        cert.message = "coordinate " + std::to_string(i + 1) + " of S(" + Integer(k * n).get_str() +
                       ") v is not divisible by " + k.get_str();
        return cert;
      }
    }
    ++cert.samples_checked;
  }
  cert.message = "all entries have zero constant term; " + std::to_string(cert.samples_checked) +
                 " sampled divisibility checks passed";
  return cert;
}

bool preserves(const MPoly& form, const Walk& s) {
  for (const auto& v : form.used_vars())
    if (std::find(s.coords().begin(), s.coords().end(), v) == s.coords().end())
      throw WalkError("form uses '" + v + "', which is not a walk coordinate");
  const MPoly f = form.with_vars(s.universe());
  Bindings b;
  for (std::size_t i = 0; i < s.dim(); ++i) b.emplace_back(s.coords()[i], s.entry(i));
  b.emplace_back(s.time_var(), MPoly::variable(s.time_var(), s.universe()));
  return (substitute(f, b) - f).is_zero();
}

PolyVector walk_orbit(const Walk& s, const std::vector<Integer>& v, const std::string& var) {
  if (v.size() != s.dim()) throw WalkError("dimension mismatch in walk orbit");
  const std::vector<std::string> u{var};
  Bindings b;
  b.emplace_back(s.time_var(), MPoly::variable(var, u));
  for (std::size_t i = 0; i < s.dim(); ++i) b.emplace_back(s.coords()[i], MPoly::constant(Rational(v[i]), u));
  std::vector<MPoly> out;
  for (const auto& e : s.entries()) out.push_back(substitute(e, b).with_vars(u));
  return PolyVector(std::move(out));
}

}  // namespace pwalk
