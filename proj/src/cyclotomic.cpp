#include "laxcyc/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace laxcyc {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Cyclotomic::Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
  if (order_ != 0 && order_ < 2) throw std::invalid_argument("cyclotomic order must be >= 2");
  const std::size_t want = order_ == 0 ? 1 : static_cast<std::size_t>(order_ - 1);
  if (c_.size() != want)
    throw std::invalid_argument("cyclotomic coefficient vector has length " + std::to_string(c_.size()) +
                                ", expected " + std::to_string(want));
}

Cyclotomic Cyclotomic::zeta_pow(int p, long k) {
  if (p < 2) throw std::invalid_argument("cyclotomic order must be >= 2");
  std::vector<Rational> c(p - 1);
  long r = ((k % p) + p) % p;
  if (r == p - 1) {
    for (auto& v : c) v = -1;
  } else {
    c[r] = 1;
  }
  return Cyclotomic(p, std::move(c));
}

bool Cyclotomic::is_zero() const {
  for (const auto& v : c_)
    if (sgn(v) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational Cyclotomic::rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic element is not rational: " + to_string());
  return c_[0];
}

void Cyclotomic::promote(int p) {
  if (order_ == p) return;
  if (order_ != 0) throw std::invalid_argument("mismatched cyclotomic orders");
  c_.resize(p - 1);
  order_ = p;
}

Cyclotomic Cyclotomic::with_order(int p) const {
  if (p == 0) {
    return Cyclotomic(rational());
  }
  Cyclotomic r = *this;
  if (r.order_ != 0 && r.order_ != p) {
    r = Cyclotomic(rational());
  }
  r.promote(p);
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.order_ == 0 || o.order_ == order_) {
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  promote(o.order_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.order_ == 0 || o.order_ == order_) {
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  promote(o.order_);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& v : c_) v *= r;
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.order_ == 0) return *this *= o.c_[0];
  if (order_ == 0) {
    Rational s = c_[0];
    *this = o;
    return *this *= s;
  }
  if (order_ != o.order_) throw std::invalid_argument("mismatched cyclotomic orders");
  const int p = order_;
  // Product modulo zeta^p = 1, then fold zeta^{p-1} back into the basis.
  std::vector<Rational> acc(p);
  for (int i = 0; i < p - 1; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < p - 1; ++j) {
      if (sgn(o.c_[j]) == 0) continue;
      acc[(i + j) % p] += c_[i] * o.c_[j];
    }
  }
  const Rational top = acc[p - 1];
  for (int i = 0; i < p - 1; ++i) c_[i] = acc[i] - top;
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_p)");
  if (order_ == 0 || is_rational()) {
    Cyclotomic r = *this;
    r.c_[0] = 1 / c_[0];
    for (std::size_t i = 1; i < r.c_.size(); ++i) r.c_[i] = 0;
    return r;
  }
  // Solve (multiplication-by-a) * x = 1 over Q by Gauss-Jordan elimination.
  const int n = order_ - 1;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (int col = 0; col < n; ++col) {
    Cyclotomic img = *this * zeta_pow(order_, col);
    for (int row = 0; row < n; ++row) m[row][col] = img.c_[row];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular multiplication map in Q(zeta_p)");
    std::swap(m[piv], m[col]);
    const Rational inv = 1 / m[col][col];
    for (int k = col; k <= n; ++k) m[col][k] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || sgn(m[row][col]) == 0) continue;
      const Rational f = m[row][col];
      for (int k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return Cyclotomic(order_, std::move(x));
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_ || a.order_ == 0 || b.order_ == 0) {
    const auto n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& x = i < a.c_.size() ? a.c_[i] : Rational(0);
      const Rational& y = i < b.c_.size() ? b.c_[i] : Rational(0);
      if (x != y) return false;
    }
    return true;
  }
  throw std::invalid_argument("mismatched cyclotomic orders");
}

Cyclotomic Cyclotomic::pow(unsigned n) const {
  Cyclotomic result(1);
  Cyclotomic base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

Complex Cyclotomic::embed() const {
  if (order_ == 0) return {c_[0].get_d(), 0.0};
  Complex acc{0.0, 0.0};
  const double step = 2.0 * std::numbers::pi / order_;
  for (int k = 0; k < order_ - 1; ++k) {
    if (sgn(c_[k]) == 0) continue;
    acc += c_[k].get_d() * std::polar(1.0, step * k);
  }
  return acc;
}

Complex embed(const Cyclotomic& a) { return a.embed(); }

std::string Cyclotomic::to_string() const {
  if (is_rational()) return laxcyc::to_string(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& v = c_[k];
    if (sgn(v) == 0) continue;
    Rational mag = abs(v);
    os << (sgn(v) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (k == 0) {
      os << laxcyc::to_string(mag);
    } else {
      if (mag != 1) os << laxcyc::to_string(mag) << "*";
      os << "z";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.to_string(); }

}  // namespace laxcyc
