#include "pwalk/frequency.hpp"

#include "pwalk/parse.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace pwalk {

namespace {

constexpr const char* kBasisNames[kBasisSize] = {"1", "sqrt2", "sqrt3", "sqrt5", "pi"};

std::size_t bit_length(const Integer& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace

Frequency::Frequency(const Rational& r) { coeffs_[0] = r; }

Frequency Frequency::named(std::string_view name) {
  Frequency f;
  if (name == "sqrt2") {
    f.coeffs_[1] = 1;
  } else if (name == "sqrt3") {
    f.coeffs_[2] = 1;
  } else if (name == "sqrt5") {
    f.coeffs_[3] = 1;
  } else if (name == "golden") {
    f.coeffs_[0] = Rational(1, 2);
    f.coeffs_[3] = Rational(1, 2);
  } else if (name == "pi") {
    f.coeffs_[4] = 1;
  } else if (name == "pi-frac") {
    f.coeffs_[0] = -3;
    f.coeffs_[4] = 1;
  } else {
    throw std::invalid_argument("unknown constant '" + std::string(name) +
                                "' (known: sqrt2, sqrt3, sqrt5, golden, pi, pi-frac)");
  }
  return f;
}

bool Frequency::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool Frequency::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

Frequency& Frequency::operator+=(const Frequency& o) {
  for (std::size_t i = 0; i < kBasisSize; ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Frequency operator-(const Frequency& a, const Frequency& b) { return a + Rational(-1) * b; }

Frequency operator*(const Rational& s, const Frequency& f) {
  Frequency out;
  for (std::size_t i = 0; i < kBasisSize; ++i) out.coeffs_[i] = s * f.coeffs_[i];
  return out;
}

double Frequency::approx() const {
  static const double values[kBasisSize] = {1.0, std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0),
                                            3.14159265358979323846};
  double out = 0;
  for (std::size_t i = 0; i < kBasisSize; ++i) out += coeffs_[i].get_d() * values[i];
  return out;
}

std::string Frequency::to_string() const {
  std::string out;
  for (std::size_t i = 1; i <= kBasisSize; ++i) {
    const std::size_t b = i % kBasisSize;  // irrational parts first, rational last
    const Rational& c = coeffs_[b];
    if (c == 0) continue;
    Rational mag = abs(c);
    std::string term;
    if (b == 0) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = kBasisNames[b];
    } else if (mag.get_num() == 1) {
      term = std::string(kBasisNames[b]) + "/" + mag.get_den().get_str();
    } else {
      term = mag.get_str() + "*" + kBasisNames[b];
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

Rational parse_rational(std::string_view text) {
  const std::string s = trim(std::string(text));
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  const auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  std::size_t j = digits(i);
  if (j == i) throw std::invalid_argument("not a number: '" + s + "'");
  Rational out(Integer(s.substr(i, j - i)));
  if (j < s.size() && s[j] == '.') {
    const std::size_t k = digits(j + 1);
    if (k == j + 1) throw std::invalid_argument("not a number: '" + s + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, k - j - 1);
    out += Rational(Integer(s.substr(j + 1, k - j - 1)), scale);
    j = k;
  } else if (j < s.size() && s[j] == '/') {
    const std::size_t k = digits(j + 1);
    if (k == j + 1) throw std::invalid_argument("not a number: '" + s + "'");
    const Integer den(s.substr(j + 1, k - j - 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    out /= Rational(den);
    j = k;
  }
  if (j != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

namespace {

// factor := number | name ; term := factor ("*" factor | "/" number)* ; sum of signed terms
class FrequencyParser {
 public:
  explicit FrequencyParser(std::string_view s) : s_(s) {}

  Frequency parse() {
    skip();
    Frequency acc;
    bool first = true;
    while (pos_ < s_.size()) {
      bool neg = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        neg = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Frequency t = term();
      acc += neg ? Rational(-1) * t : t;
      first = false;
      skip();
    }
    if (first) fail("empty frequency");
    return acc;
  }

 private:
  Frequency term() {
    Frequency acc = factor();
    skip();
    while (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
      const char op = s_[pos_++];
      skip();
      if (op == '*') {
        Frequency f = factor();
        if (f.is_rational())
          acc = f.coeff(Basis::One) * acc;
        else if (acc.is_rational())
          acc = acc.coeff(Basis::One) * f;
        else
          fail("product of two irrational constants is not supported");
      } else {
        const Rational d = number();
        if (d == 0) fail("division by zero");
        acc = Rational(1 / d) * acc;
      }
      skip();
    }
    return acc;
  }

  Frequency factor() {
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t j = pos_;
      if (s_.substr(pos_, 7) == "pi-frac") {
        j += 7;
      } else {
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      }
      const std::string name(s_.substr(pos_, j - pos_));
      pos_ = j;
      try {
        return Frequency::named(name);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    return number();
  }

  Rational number() {
    std::size_t j = pos_;
    while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.')) ++j;
    if (j == pos_) fail("expected a number or a named constant");
    const std::string lit(s_.substr(pos_, j - pos_));
    pos_ = j;
    try {
      return parse_rational(lit);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in frequency '" + std::string(s_) + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Frequency parse_frequency(std::string_view text) { return FrequencyParser(text).parse(); }

std::vector<Frequency> parse_frequency_list(std::string_view text) {
  std::vector<Frequency> out;
  for (const auto& part : split_top_level(std::string(text), ',')) out.push_back(parse_frequency(part));
  return out;
}

namespace {

struct ConstantCache {
  std::mutex mutex;
  std::array<std::size_t, kBasisSize> bits{};
  std::array<Integer, kBasisSize> value;
};

ConstantCache& constant_cache() {
  static ConstantCache cache;
  return cache;
}

Integer compute_fixed_point(Basis b, std::size_t bits) {
  mpfr_t x;
  mpfr_init2(x, static_cast<mpfr_prec_t>(bits + 64));
  switch (b) {
    case Basis::Sqrt2: mpfr_sqrt_ui(x, 2, MPFR_RNDN); break;
    case Basis::Sqrt3: mpfr_sqrt_ui(x, 3, MPFR_RNDN); break;
    case Basis::Sqrt5: mpfr_sqrt_ui(x, 5, MPFR_RNDN); break;
    case Basis::Pi: mpfr_const_pi(x, MPFR_RNDN); break;
    case Basis::One: mpfr_set_ui(x, 1, MPFR_RNDN); break;
  }
  mpfr_mul_2ui(x, x, static_cast<unsigned long>(bits), MPFR_RNDN);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDD);
  mpfr_clear(x);
  return out;
}

}  // namespace

Integer basis_fixed_point(Basis b, std::size_t bits) {
  auto& cache = constant_cache();
  const auto i = static_cast<std::size_t>(b);
  std::lock_guard lock(cache.mutex);
  if (cache.bits[i] < bits) {
    const std::size_t target = std::max(bits, 2 * cache.bits[i]);
    cache.value[i] = compute_fixed_point(b, target);
    cache.bits[i] = target;
  }
  Integer out;
  mpz_fdiv_q_2exp(out.get_mpz_t(), cache.value[i].get_mpz_t(), cache.bits[i] - bits);
  return out;
}

double Phase::value() const {
  if (bits <= 60) return std::ldexp(fixed.get_d(), -static_cast<int>(bits));
  Integer top;
  mpz_fdiv_q_2exp(top.get_mpz_t(), fixed.get_mpz_t(), bits - 60);
  return std::ldexp(top.get_d(), -60);
}

ArcTest compare_distance(const Phase& phase, const Rational& center, const Rational& radius,
                         const Rational& guard) {
  Integer modulus = 1;
  modulus <<= phase.bits;
  // center reduced mod 1, scaled: error below one unit
  Integer whole;
  mpz_fdiv_q(whole.get_mpz_t(), center.get_num_mpz_t(), center.get_den_mpz_t());
  const Rational c = center - Rational(whole);
  Integer cfixed = Integer(c.get_num() << phase.bits) / c.get_den();
  Integer diff = phase.fixed - cfixed;
  if (diff < 0) diff = -diff;
  if (diff > modulus - diff) diff = modulus - diff;
  // |distance error| is at most a few units; fold them into the guard band
  const Rational lo = radius - guard;
  const Rational hi = radius + guard;
  const Rational dist(diff, modulus);
  if (dist < lo) return ArcTest::Inside;
  if (dist > hi) return ArcTest::Outside;
  return ArcTest::Indeterminate;
}

PhaseKernel::PhaseKernel(std::vector<Frequency> coeffs, unsigned digits, std::size_t magnitude_hint_bits)
    : coeffs_(std::move(coeffs)), digits_(digits) {
  if (digits_ < 20) throw std::invalid_argument("precision must be at least 20 decimal digits");
  target_bits_ = static_cast<std::size_t>(std::ceil(digits_ * 3.3219280948873623)) + 16;
  std::size_t coeff_bits = 0;
  for (std::size_t b = 0; b < kBasisSize; ++b) {
    Integer den = 1;
    for (const auto& f : coeffs_) {
      const Rational& c = f.coeffs()[b];
      if (c != 0) {
        used_[b] = true;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      }
    }
    denominators_[b] = den;
    for (const auto& f : coeffs_) {
      const Rational& c = f.coeffs()[b];
      Integer num = c.get_num() * (den / c.get_den());
      coeff_bits = std::max(coeff_bits, bit_length(num));
      numerators_[b].push_back(std::move(num));
    }
  }
  cached_bits_ = target_bits_ + magnitude_hint_bits + coeff_bits + 16;
  for (std::size_t b = 1; b < kBasisSize; ++b)
    if (used_[b]) cached_constants_[b] = basis_fixed_point(static_cast<Basis>(b), cached_bits_);
}

Phase PhaseKernel::operator()(const std::vector<Integer>& v) const {
  if (v.size() != coeffs_.size())
    throw std::invalid_argument("phase: vector of length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(coeffs_.size()));
  std::array<Integer, kBasisSize> nums;
  for (std::size_t b = 0; b < kBasisSize; ++b) {
    if (!used_[b]) continue;
    Integer acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (numerators_[b][i] != 0) acc += numerators_[b][i] * v[i];
    nums[b] = std::move(acc);
  }
  return evaluate(nums, Integer(1));
}

Phase PhaseKernel::operator()(const std::vector<Rational>& v) const {
  if (v.size() != coeffs_.size())
    throw std::invalid_argument("phase: vector of length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(coeffs_.size()));
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) scaled.push_back(x.get_num() * (den / x.get_den()));
  if (den == 1) return (*this)(scaled);
  std::array<Integer, kBasisSize> nums;
  for (std::size_t b = 0; b < kBasisSize; ++b) {
    if (!used_[b]) continue;
    Integer acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (numerators_[b][i] != 0) acc += numerators_[b][i] * scaled[i];
    nums[b] = std::move(acc);
  }
  return evaluate(nums, den);
}

Phase PhaseKernel::operator()(const Frequency& f) const {
  // standalone frequency, independent of the configured coefficients
  PhaseKernel single({f}, digits_, 0);
  return single(std::vector<Integer>{Integer(1)});
}

Phase PhaseKernel::evaluate(const std::array<Integer, kBasisSize>& nums, const Integer& extra_den) const {
  // |c_b| <= 2^mag; each truncated term is off by at most |c_b| + 1 units
  std::size_t mag = 0;
  for (std::size_t b = 0; b < kBasisSize; ++b)
    if (used_[b] && nums[b] != 0)
      mag = std::max(mag, bit_length(nums[b]) > bit_length(denominators_[b])
                              ? bit_length(nums[b]) - bit_length(denominators_[b]) + 1
                              : 1);
  const std::size_t bits = target_bits_ + mag + 4;
  Integer acc = 0;
  for (std::size_t b = 0; b < kBasisSize; ++b) {
    if (!used_[b] || nums[b] == 0) continue;
    Integer x;
    if (b == 0) {
      x = 1;
      x <<= bits;
    } else if (bits <= cached_bits_) {
      mpz_fdiv_q_2exp(x.get_mpz_t(), cached_constants_[b].get_mpz_t(), cached_bits_ - bits);
    } else {
      x = basis_fixed_point(static_cast<Basis>(b), bits);
    }
    Integer term = nums[b] * x;
    const Integer den = denominators_[b] * extra_den;
    mpz_fdiv_q(term.get_mpz_t(), term.get_mpz_t(), den.get_mpz_t());
    acc += term;
  }
  Phase out;
  out.bits = bits;
  mpz_fdiv_r_2exp(out.fixed.get_mpz_t(), acc.get_mpz_t(), bits);
  return out;
}

}  // namespace pwalk
