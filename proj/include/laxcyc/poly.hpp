#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laxcyc/scalar.hpp"

namespace laxcyc {

/// Dense univariate polynomial; coeffs()[k] is the coefficient of x^k.
/// Trailing zeros are always trimmed, so degree() of the zero polynomial is -1.
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(const T& c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  Poly(int c) : c_{T(c)} { trim(); }     // NOLINT(google-explicit-constructor)
  Poly(std::initializer_list<T> l) : c_(l) { trim(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(int k, const T& c) {
    if (k < 0) throw std::invalid_argument("negative monomial degree");
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(1, T(1)); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  void set_coeff(int k, const T& v) {
    if (k < 0) throw std::invalid_argument("negative coefficient index");
    if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, T(0));
    c_[k] = v;
    trim();
  }

  T operator()(const T& x0) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x0 + *it;
    return acc;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<T>()));
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return Poly<U>(std::move(out));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::zero_of(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const T& s, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c_) v = s * v;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    std::vector<T> out;
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(scale(c_[k], Rational(static_cast<long>(k))));
    return Poly(std::move(out));
  }

  /// p(x) -> p(x^n)
  Poly inflate(int n) const {
    if (is_zero()) return {};
    std::vector<T> out(static_cast<std::size_t>(degree()) * n + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) out[k * n] = c_[k];
    return Poly(std::move(out));
  }

  /// Quotient and remainder by a non-zero divisor. Leading coefficients are
  /// divided with exact_div, so this is Euclidean division over a field and
  /// exact division over a domain whenever the division is exact.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    const int dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<T> r = c_;
    std::vector<T> q(c_.size() - dd, T(0));
    const T lc = d.leading();
    for (int k = degree(); k >= dd; --k) {
      if (detail::zero_of(r[k])) continue;
      const T f = exact_div(r[k], lc);
      q[k - dd] = f;
      for (int j = 0; j < dd; ++j) r[k - dd + j] -= f * d.c_[j];
      r[k] = T(0);
    }
    r.resize(dd, T(0));
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  template <class U>
  friend std::ostream& operator<<(std::ostream& os, const Poly<U>& p);

 private:
  std::vector<T> c_;

  void trim() {
    while (!c_.empty() && detail::zero_of(c_.back())) c_.pop_back();
  }
};

template <class T>
bool is_zero(const Poly<T>& p) {
  return p.is_zero();
}

template <class T>
Poly<T> scale(const Poly<T>& p, const Rational& r) {
  return p.map([&](const T& v) { return scale(v, r); });
}

/// Exact division; throws std::domain_error if b does not divide a.
template <class T>
  requires requires(const T& v) { exact_div(v, v); }
Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw std::domain_error("polynomial does not divide exactly");
  return q;
}

/// Monic gcd over a field.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const T inv = exact_div(T(1), a.leading());
  return inv * a;
}

template <class T>
std::string poly_to_string(const Poly<T>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[k];
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    std::ostringstream os;
    os << c;
    std::string cs = os.str();
    if (k == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") out += (cs.find_first_of("+ ") != std::string::npos ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

template <class U>
std::ostream& operator<<(std::ostream& os, const Poly<U>& p) {
  return os << poly_to_string(p);
}

}  // namespace laxcyc
