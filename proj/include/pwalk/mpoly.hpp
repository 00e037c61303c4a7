#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pwalk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent vector over a polynomial's variable universe (one slot per variable).
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, largest monomial first.
struct GradedLexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

using TermMap = std::map<Exponents, Rational, GradedLexDescending>;

/// Raised when two polynomials cannot be combined or a substitution is ambiguous.
class PolyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Sparse multivariate polynomial with exact rational coefficients.
 *
 * The variable universe is an explicit ordered list of names. Terms never
 * carry a zero coefficient, so the zero polynomial is the empty term map.
 * Exponent vectors always have one slot per universe variable; a slot
 * holding zero means the variable is absent from the monomial.
 * Values are immutable once built; every operation returns a new value.
 */
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars);
  MPoly(std::vector<std::string> vars, TermMap terms);

  static MPoly constant(const Rational& c, std::vector<std::string> vars = {});
  static MPoly variable(const std::string& name, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  bool has_integer_coefficients() const;

  std::uint32_t total_degree() const;
  /// Degree in a named variable; 0 if the name is not in the universe.
  std::uint32_t degree_in(const std::string& name) const;
  /// Index of the variable in the universe, or -1.
  int var_index(const std::string& name) const;
  /// Names of variables that actually occur with positive exponent.
  std::vector<std::string> used_vars() const;

  /// Re-embed into a universe that contains every used variable.
  MPoly with_vars(std::vector<std::string> vars) const;

  MPoly operator-() const;
  MPoly scaled(const Rational& c) const;
  MPoly pow(std::uint32_t e) const;

  MPoly& operator+=(const MPoly& b);

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);

  /// Structural equality: same universe, same terms.
  friend bool operator==(const MPoly& a, const MPoly& b);

  /// Coefficients in powers of one variable: result[k] multiplies name^k.
  std::vector<MPoly> coefficients_in(const std::string& name) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Union of universes: a's order first, then b's new names in b's order.
std::vector<std::string> merge_universes(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

using Bindings = std::vector<std::pair<std::string, MPoly>>;

/**
 * Exact composition p(v -> b(v)). Unbound variables pass through. A binding
 * whose polynomial uses a variable that p retains unbound is rejected.
 */
MPoly substitute(const MPoly& p, const Bindings& bindings);

using Point = std::unordered_map<std::string, Rational>;

/// Exact evaluation; every used variable must be bound.
Rational evaluate(const MPoly& p, const Point& point);

/// Evaluation at a point aligned with p.vars().
Rational evaluate(const MPoly& p, const std::vector<Rational>& point);

/**
 * Fast exact evaluator for a univariate integer-valued polynomial, used in the
 * hot loops that walk an orbit n = 1, 2, ...: coefficients are brought to a
 * common denominator once and evaluated with integer Horner steps.
 */
class UnivariateEvaluator {
 public:
  UnivariateEvaluator() = default;
  explicit UnivariateEvaluator(const MPoly& p);

  Rational operator()(const Integer& n) const;
  /// Requires the value to be an integer; throws PolyError otherwise.
  Integer integer_at(const Integer& n) const;

 private:
  std::vector<Integer> numerators_;  // ascending powers
  Integer denominator_ = 1;
};

/// Ordered family of polynomials over one shared universe.
class PolyVector {
 public:
  PolyVector() = default;
  explicit PolyVector(std::vector<MPoly> entries);

  std::size_t size() const { return entries_.size(); }
  const MPoly& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<MPoly>& entries() const { return entries_; }
  const std::vector<std::string>& vars() const { return vars_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const PolyVector& a, const PolyVector& b) = default;

  std::string to_string() const;

 private:
  std::vector<MPoly> entries_;
  std::vector<std::string> vars_;
};

}  // namespace pwalk
