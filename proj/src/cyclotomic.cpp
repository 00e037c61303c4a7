#include "pwalk/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pwalk {

namespace {

constexpr unsigned long kMaxOrder = 1ul << 16;

// exact division of a by monic b, both ascending; a must be divisible
std::vector<Integer> divide_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Integer> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned long q) {
  if (q == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
  if (q > kMaxOrder) throw std::invalid_argument("root of unity order " + std::to_string(q) + " too large");
  static std::mutex mutex;
  static std::map<unsigned long, std::vector<Integer>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  std::vector<Integer> num(q + 1, 0);
  num[0] = -1;
  num[q] = 1;
  for (unsigned long d = 1; d < q; ++d)
    if (q % d == 0) num = divide_exact(std::move(num), cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  return cache.emplace(q, std::move(num)).first->second;
}

CyclotomicNumber::CyclotomicNumber(unsigned long q) : q_(q), coeffs_(q, 0) {
  if (q == 0) throw std::invalid_argument("root of unity order must be positive");
  if (q > kMaxOrder) throw std::invalid_argument("root of unity order " + std::to_string(q) + " too large");
}

CyclotomicNumber CyclotomicNumber::root(unsigned long q, unsigned long j) {
  CyclotomicNumber out(q);
  out.add_root(j);
  return out;
}

void CyclotomicNumber::add_root(unsigned long j, const Rational& c) { coeffs_[j % q_] += c; }

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.q_ != q_) throw std::invalid_argument("adding cyclotomic numbers of different orders");
  for (unsigned long j = 0; j < q_; ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

CyclotomicNumber CyclotomicNumber::scaled(const Rational& s) const {
  CyclotomicNumber out(*this);
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

std::vector<Rational> CyclotomicNumber::reduced() const {
  const auto phi = cyclotomic_polynomial(q_);
  const std::size_t deg = phi.size() - 1;
  std::vector<Rational> r = coeffs_;
  for (std::size_t i = r.size(); i-- > deg;) {
    if (r[i] == 0) continue;
    const Rational c = r[i];
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * Rational(phi[j]);
  }
  r.resize(std::min(r.size(), deg));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::optional<Rational> CyclotomicNumber::as_rational() const {
  const auto r = reduced();
  if (r.empty()) return Rational(0);
  if (r.size() == 1) return r[0];
  return std::nullopt;
}

std::complex<double> CyclotomicNumber::to_complex() const {
  std::complex<double> out = 0;
  for (unsigned long j = 0; j < q_; ++j)
    if (coeffs_[j] != 0) out += coeffs_[j].get_d() * std::polar(1.0, 2 * std::numbers::pi * j / q_);
  return out;
}

std::string CyclotomicNumber::to_string() const {
  if (const auto r = as_rational()) return r->get_str();
  std::string out;
  const auto r = reduced();
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + r[j].get_str() + ")";
    if (j > 0) out += "*z" + std::to_string(q_) + "^" + std::to_string(j);
  }
  return out;
}

}  // namespace pwalk
