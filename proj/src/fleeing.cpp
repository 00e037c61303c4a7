#include "pwalk/fleeing.hpp"

#include "pwalk/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace pwalk {

std::string AffineFunctional::to_string(const std::vector<std::string>& coords) const {
  MPoly l = MPoly::constant(constant, coords);
  for (std::size_t i = 0; i < linear.size() && i < coords.size(); ++i)
    l += MPoly::variable(coords[i], coords).scaled(linear[i]);
  return l.to_string();
}

std::vector<AffineFunctional> affine_annihilator(const PolyVector& p) {
  if (p.empty()) throw PolyError("affine annihilator of an empty vector");
  const std::size_t d = p.size();
  const std::size_t nv = p.vars().size();

  // rows: distinct monomials; columns: 1, p_1, ..., p_d
  std::map<Exponents, std::size_t, GradedLexDescending> row_of;
  row_of.emplace(Exponents(nv, 0), 0);
  for (const auto& e : p.entries())
    for (const auto& [mono, c] : e.terms()) row_of.try_emplace(mono, row_of.size());

  RationalMatrix m(row_of.size(), d + 1);
  m(row_of.at(Exponents(nv, 0)), 0) = 1;
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& [mono, c] : p[j].terms()) m(row_of.at(mono), j + 1) = c;

  std::vector<AffineFunctional> basis;
  for (auto v : kernel_basis(std::move(m))) {
    // reorder to (linear..., constant)
    std::vector<Rational> ordered(v.begin() + 1, v.end());
    ordered.push_back(v.front());
    ordered = primitive_integer_direction(std::move(ordered));
    AffineFunctional f;
    f.constant = ordered.back();
    ordered.pop_back();
    f.linear = std::move(ordered);
    basis.push_back(std::move(f));
  }
  return basis;
}

bool is_fleeing(const PolyVector& p) { return affine_annihilator(p).empty(); }

std::string orbit_time_var(std::size_t k) { return "t_" + std::to_string(k); }

namespace {

void check_generators(const std::vector<Walk>& gens, std::size_t dim) {
  if (gens.empty()) throw WalkError("at least one generator walk is required");
  for (const auto& g : gens) {
    if (g.dim() != dim)
      throw WalkError("dimension mismatch: generator has " + std::to_string(g.dim()) +
                      " coordinates, start vector has " + std::to_string(dim));
    for (const auto& c : g.coords())
      if (c.rfind("t_", 0) == 0) throw WalkError("coordinate name '" + c + "' is reserved");
  }
}

// Applies s(t_k) to an orbit vector over t_1..t_{k-1}.
PolyVector orbit_step(const PolyVector& prev, const Walk& s, std::size_t k) {
  std::vector<std::string> universe = prev.vars();
  universe.push_back(orbit_time_var(k));
  Bindings b;
  b.emplace_back(s.time_var(), MPoly::variable(orbit_time_var(k), universe));
  for (std::size_t i = 0; i < s.dim(); ++i) b.emplace_back(s.coords()[i], prev[i].with_vars(universe));
  std::vector<MPoly> out;
  out.reserve(s.dim());
  for (const auto& e : s.entries()) out.push_back(substitute(e, b).with_vars(universe));
  return PolyVector(std::move(out));
}

PolyVector constant_vector(const std::vector<Integer>& v) {
  std::vector<MPoly> out;
  for (const auto& x : v) out.push_back(MPoly::constant(Rational(x)));
  return PolyVector(std::move(out));
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

PolyVector orbit_polynomials(const std::vector<Walk>& gens, const std::vector<Integer>& v,
                             std::size_t depth) {
  check_generators(gens, v.size());
  if (depth < 1) throw WalkError("orbit depth must be at least 1");
  PolyVector orbit = constant_vector(v);
  for (std::size_t k = 1; k <= depth; ++k) orbit = orbit_step(orbit, gens[(k - 1) % gens.size()], k);
  return orbit;
}

FleeingCertificate construct_fleeing_walk(const std::vector<Walk>& gens,
                                          const std::vector<Integer>& v,
                                          const FleeingOptions& options) {
  check_generators(gens, v.size());
  const std::size_t d = v.size();
  const std::size_t max_depth = options.max_depth.value_or(8 * gens.size() * d);

  std::vector<std::size_t> trace;
  PolyVector orbit = constant_vector(v);
  std::size_t depth = 0;
  for (std::size_t k = 1; k <= max_depth; ++k) {
    orbit = orbit_step(orbit, gens[(k - 1) % gens.size()], k);
    trace.push_back(affine_annihilator(orbit).size());
    if (trace.back() == 0) {
      depth = k;
      break;
    }
  }
  if (depth == 0)
    throw FleeingError(FleeingError::Kind::DepthExhausted,
                       "annihilator still non-trivial at depth cap " + std::to_string(max_depth) +
                           " (trace: " + join(trace) + ")",
                       trace);

  std::uint32_t max_exp = 0;
  for (const auto& e : orbit.entries())
    for (std::size_t k = 1; k <= depth; ++k) max_exp = std::max(max_exp, e.degree_in(orbit_time_var(k)));
  const std::uint32_t first_base = max_exp + 1;
  const std::uint32_t max_base = options.max_base.value_or(10 * first_base);

  const std::vector<std::string> n_universe{"n"};
  const MPoly n = MPoly::variable("n", n_universe);
  for (std::uint32_t base = std::max<std::uint32_t>(first_base, 2); base <= max_base; ++base) {
    std::vector<std::uint64_t> exps;
    std::uint64_t e = 1;
    bool overflow = false;
    for (std::size_t k = 1; k <= depth; ++k) {
      e *= base;
      // the substituted degree max_exp * sum(e_k) must fit the exponent type
      if (e > std::numeric_limits<std::uint32_t>::max() / (std::uint64_t{max_exp} * depth + 1)) {
        overflow = true;
        break;
      }
      exps.push_back(e);
    }
    if (overflow) break;

    Bindings b;
    for (std::size_t k = 1; k <= depth; ++k)
      b.emplace_back(orbit_time_var(k), n.pow(static_cast<std::uint32_t>(exps[k - 1])));
    std::vector<MPoly> substituted;
    for (const auto& entry : orbit.entries()) substituted.push_back(substitute(entry, b).with_vars(n_universe));
    PolyVector single(std::move(substituted));
    if (!is_fleeing(single)) continue;

    Walk walk = walk_reparam(gens[0], static_cast<std::uint32_t>(exps[0]));
    for (std::size_t k = 2; k <= depth; ++k)
      walk = walk_compose(walk_reparam(gens[(k - 1) % gens.size()], static_cast<std::uint32_t>(exps[k - 1])),
                          walk);
    if (!(walk_orbit(walk, v, "n") == single))
      throw WalkError("internal error: composed walk disagrees with the substituted orbit");

    return FleeingCertificate{.depth = depth,
                              .annihilator_basis = {},
                              .base = base,
                              .exponents = std::move(exps),
                              .final_walk = std::move(walk),
                              .multi_orbit = orbit,
                              .orbit_poly = std::move(single),
                              .trace = std::move(trace),
                              .start = v};
  }
  throw FleeingError(FleeingError::Kind::BaseExhausted,
                     "no exponent base in [" + std::to_string(first_base) + ", " +
                         std::to_string(max_base) + "] gave an independent orbit",
                     trace);
}

std::string FleeingCertificate::report() const {
  std::ostringstream os;
  os << "fleeing-certificate\n";
  os << "start";
  for (const auto& x : start) os << ' ' << x.get_str();
  os << "\ndepth " << depth << "\nbase " << base << "\nexponents";
  for (auto e : exponents) os << ' ' << e;
  os << "\ntrace " << join(trace) << "\n";
  os << "annihilator-dimension " << annihilator_basis.size() << "\n";
  os << "multi-orbit " << multi_orbit.to_string() << "\n";
  os << "orbit " << orbit_poly.to_string() << "\n";
  os << "final-walk\n" << final_walk.serialize();
  return os.str();
}

}  // namespace pwalk
