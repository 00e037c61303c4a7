#include "pwalk/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pwalk {

bool GradedLexDescending::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::string> merge_universes(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& name : b)
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  return out;
}

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) throw PolyError("duplicate variable '" + vars_[i] + "'");
}

MPoly::MPoly(std::vector<std::string> vars, TermMap terms) : MPoly(std::move(vars)) {
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw PolyError("exponent vector does not match universe");
    add_term(e, c);
  }
}

MPoly MPoly::constant(const Rational& c, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

MPoly MPoly::variable(const std::string& name, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  const int idx = p.var_index(name);
  if (idx < 0) throw PolyError("variable '" + name + "' not in universe");
  Exponents e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(idx)] = 1;
  p.add_term(e, 1);
  return p;
}

void MPoly::add_term(const Exponents& e, const Rational& raw) {
  Rational c = raw;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](auto x) { return x == 0; }));
}

Rational MPoly::constant_term() const {
  if (auto it = terms_.find(Exponents(vars_.size(), 0)); it != terms_.end()) return it->second;
  return 0;
}

bool MPoly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

std::uint32_t MPoly::total_degree() const {
  // Graded order puts the highest total degree first.
  if (terms_.empty()) return 0;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

int MPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

std::uint32_t MPoly::degree_in(const std::string& name) const {
  const int idx = var_index(name);
  if (idx < 0) return 0;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(idx)]);
  return d;
}

std::vector<std::string> MPoly::used_vars() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) out.push_back(vars_[i]);
  return out;
}

MPoly MPoly::with_vars(std::vector<std::string> vars) const {
  if (vars == vars_) return *this;
  MPoly out(std::move(vars));
  std::vector<std::size_t> map(vars_.size());
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const int idx = out.var_index(vars_[i]);
    if (idx < 0) {
      if (used[i]) throw PolyError("variable '" + vars_[i] + "' missing from target universe");
      map[i] = static_cast<std::size_t>(-1);
    } else {
      map[i] = static_cast<std::size_t>(idx);
    }
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(out.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ne[map[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MPoly MPoly::operator-() const { return scaled(-1); }

MPoly MPoly::scaled(const Rational& raw) const {
  MPoly out(vars_);
  Rational c = raw;
  c.canonicalize();
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  return out;
}

MPoly MPoly::pow(std::uint32_t e) const {
  MPoly result = constant(1, vars_);
  MPoly base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

namespace {

std::pair<MPoly, MPoly> aligned(const MPoly& a, const MPoly& b) {
  if (a.vars() == b.vars()) return {a, b};
  auto u = merge_universes(a.vars(), b.vars());
  return {a.with_vars(u), b.with_vars(u)};
}

}  // namespace

MPoly& MPoly::operator+=(const MPoly& b) {
  if (vars_ != b.vars_) return *this = *this + b;
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) {
    auto [x, y] = aligned(a, b);
    return x + y;
  }
  MPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) {
    auto [x, y] = aligned(a, b);
    return x - y;
  }
  MPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) {
    auto [x, y] = aligned(a, b);
    return x * y;
  }
  MPoly out(a.vars_);
  Exponents e(a.vars_.size());
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

bool operator==(const MPoly& a, const MPoly& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

std::vector<MPoly> MPoly::coefficients_in(const std::string& name) const {
  const int idx = var_index(name);
  if (idx < 0) return {*this};
  const auto i = static_cast<std::size_t>(idx);
  std::vector<MPoly> out(degree_in(name) + 1, MPoly(vars_));
  for (auto& p : out) p = MPoly(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[i] = 0;
    out[e[i]].add_term(ne, c);
  }
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << '*';
      mono << vars_[i];
      if (e[i] > 1) mono << '^' << e[i];
      any = true;
    }
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    if (!any) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << mag.get_str() << '*' << mono.str();
    }
    first = false;
  }
  return os.str();
}

MPoly substitute(const MPoly& p, const Bindings& bindings) {
  const auto& pv = p.vars();
  std::vector<int> bound(pv.size(), -1);
  for (std::size_t b = 0; b < bindings.size(); ++b) {
    const int idx = p.var_index(bindings[b].first);
    if (idx < 0) throw PolyError("bound variable '" + bindings[b].first + "' not in universe");
    if (bound[static_cast<std::size_t>(idx)] >= 0)
      throw PolyError("variable '" + bindings[b].first + "' bound twice");
    bound[static_cast<std::size_t>(idx)] = static_cast<int>(b);
  }

  std::vector<std::string> retained;
  for (std::size_t i = 0; i < pv.size(); ++i)
    if (bound[i] < 0) retained.push_back(pv[i]);
  const auto used = p.used_vars();
  for (const auto& [name, poly] : bindings) {
    for (const auto& v : poly.used_vars()) {
      const bool is_retained = std::find(retained.begin(), retained.end(), v) != retained.end();
      const bool is_used = std::find(used.begin(), used.end(), v) != used.end();
      if (is_retained && is_used)
        throw PolyError("binding for '" + name + "' uses retained variable '" + v + "'");
    }
  }

  std::vector<std::string> universe = retained;
  for (std::size_t i = 0; i < pv.size(); ++i)
    if (bound[i] >= 0)
      universe = merge_universes(universe, bindings[static_cast<std::size_t>(bound[i])].second.vars());

  std::vector<MPoly> image(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    image[i] = bound[i] >= 0
                   ? bindings[static_cast<std::size_t>(bound[i])].second.with_vars(universe)
                   : MPoly::variable(pv[i], universe);
  }

  // powers[i][k] = image[i]^k, grown on demand
  std::vector<std::vector<MPoly>> powers(pv.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const MPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MPoly::constant(1, universe));
    while (cache.size() <= k) cache.push_back(cache.back() * image[i]);
    return cache[k];
  };

  MPoly result(universe);
  for (const auto& [e, c] : p.terms()) {
    MPoly term = MPoly::constant(c, universe);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * power(i, e[i]);
    result += term;
  }
  return result;
}

Rational evaluate(const MPoly& p, const std::vector<Rational>& raw) {
  if (raw.size() != p.vars().size()) throw PolyError("evaluation point does not match universe");
  std::vector<Rational> point = raw;
  for (auto& x : point) x.canonicalize();
  Rational total = 0;
  Rational term;
  Rational pw;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      term *= pw;
    }
    total += term;
  }
  return total;
}

Rational evaluate(const MPoly& p, const Point& point) {
  std::vector<Rational> aligned(p.vars().size());
  const auto used = p.used_vars();
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    auto it = point.find(p.vars()[i]);
    if (it != point.end()) {
      aligned[i] = it->second;
    } else if (std::find(used.begin(), used.end(), p.vars()[i]) != used.end()) {
      throw PolyError("unbound variable '" + p.vars()[i] + "'");
    }
  }
  return evaluate(p, aligned);
}

UnivariateEvaluator::UnivariateEvaluator(const MPoly& p) {
  const auto used = p.used_vars();
  if (used.size() > 1) throw PolyError("univariate evaluator needs at most one variable");
  const auto coeffs = used.empty() ? std::vector<MPoly>{p} : p.coefficients_in(used.front());
  denominator_ = 1;
  for (const auto& c : coeffs) {
    const Rational v = c.constant_term();
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), v.get_den_mpz_t());
  }
  numerators_.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    const Rational v = c.constant_term() * denominator_;
    numerators_.push_back(v.get_num());
  }
}

Rational UnivariateEvaluator::operator()(const Integer& n) const {
  Integer acc = 0;
  for (auto it = numerators_.rbegin(); it != numerators_.rend(); ++it) {
    acc *= n;
    acc += *it;
  }
  Rational out(acc, denominator_);
  out.canonicalize();
  return out;
}

Integer UnivariateEvaluator::integer_at(const Integer& n) const {
  Integer acc = 0;
  for (auto it = numerators_.rbegin(); it != numerators_.rend(); ++it) {
    acc *= n;
    acc += *it;
  }
  if (denominator_ == 1) return acc;
  if (!mpz_divisible_p(acc.get_mpz_t(), denominator_.get_mpz_t()))
    throw PolyError("polynomial value is not an integer");
  Integer q;
  mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), denominator_.get_mpz_t());
  return q;
}

PolyVector::PolyVector(std::vector<MPoly> entries) {
  for (const auto& e : entries) vars_ = merge_universes(vars_, e.vars());
  entries_.reserve(entries.size());
  for (auto& e : entries) entries_.push_back(e.with_vars(vars_));
}

std::string PolyVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].to_string();
  }
  return out + ")";
}

}  // namespace pwalk
