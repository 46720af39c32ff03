#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "laxcyc/matrix.hpp"
#include "laxcyc/poly.hpp"

namespace laxcyc {

/// A p x p matrix whose entries are polynomials of degree <= q, stored as its
/// coefficient matrices L_0, ..., L_q (L(x) = sum_k L_k x^k).
///
/// The degree bound q is part of the value: two matrices with the same
/// entries but different bounds live in different phase spaces.
template <class T>
class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(int p, int q) : p_(p), q_(q), L_(q + 1, Mat<T>(p, p)) {
    if (p < 1) throw std::invalid_argument("PolyMat size must be positive");
    if (q < 0) throw std::invalid_argument("PolyMat degree bound must be non-negative");
  }
  /// Constant matrix (q = 0).
  explicit PolyMat(const Mat<T>& c) : PolyMat(c.rows(), 0) { L_[0] = c; }
  PolyMat(int p, std::vector<Mat<T>> coeffs) : p_(p), q_(static_cast<int>(coeffs.size()) - 1), L_(std::move(coeffs)) {
    if (q_ < 0) throw std::invalid_argument("PolyMat needs at least one coefficient matrix");
  }

  int p() const { return p_; }
  int q() const { return q_; }

  const Mat<T>& coeff(int k) const { return L_.at(k); }
  Mat<T>& coeff(int k) { return L_.at(k); }
  /// l^k_{ij} (0-based i, j); zero outside 0 <= k <= q.
  T at(int i, int j, int k) const { return (k < 0 || k > q_) ? T(0) : L_[k](i, j); }
  void set(int i, int j, int k, const T& v) { L_.at(k)(i, j) = v; }

  Poly<T> entry(int i, int j) const {
    std::vector<T> c(q_ + 1, T(0));
    for (int k = 0; k <= q_; ++k) c[k] = L_[k](i, j);
    return Poly<T>(std::move(c));
  }

  /// Largest k with L_k != 0, or -1.
  int effective_degree() const {
    for (int k = q_; k >= 0; --k)
      if (!L_[k].is_zero()) return k;
    return -1;
  }

  /// Same matrix with a different degree bound; throws if it does not fit.
  PolyMat with_bound(int q) const {
    if (effective_degree() > q) throw std::invalid_argument("matrix does not fit the requested degree bound");
    PolyMat out(p_, q);
    for (int k = 0; k <= std::min(q, q_); ++k) out.L_[k] = L_[k];
    return out;
  }

  /// L(infinity) := L_q, the top coefficient at the declared bound.
  const Mat<T>& leading() const { return L_.back(); }

  Mat<T> eval(const T& x0) const {
    Mat<T> acc(p_, p_);
    for (int k = q_; k >= 0; --k) acc = x0 * acc + L_[k];
    return acc;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<T>()));
    std::vector<Mat<U>> out;
    out.reserve(L_.size());
    for (const auto& m : L_) out.push_back(m.map(f));
    return PolyMat<U>(p_, std::move(out));
  }

  bool is_zero() const { return effective_degree() < 0; }

  PolyMat operator-() const {
    PolyMat r = *this;
    for (auto& m : r.L_) m = -m;
    return r;
  }
  friend PolyMat operator+(const PolyMat& a, const PolyMat& b) { return combine(a, b, false); }
  friend PolyMat operator-(const PolyMat& a, const PolyMat& b) { return combine(a, b, true); }
  /// Product; the result's bound is the sum of the bounds.
  friend PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    check_size(a, b);
    PolyMat out(a.p_, a.q_ + b.q_);
    for (int i = 0; i <= a.q_; ++i) {
      if (a.L_[i].is_zero()) continue;
      for (int j = 0; j <= b.q_; ++j) {
        if (b.L_[j].is_zero()) continue;
        out.L_[i + j] += a.L_[i] * b.L_[j];
      }
    }
    return out;
  }
  friend PolyMat operator*(const T& s, PolyMat m) {
    for (auto& c : m.L_) c = s * c;
    return m;
  }
  /// Equality of the polynomial matrices (degree bounds may differ).
  friend bool operator==(const PolyMat& a, const PolyMat& b) {
    if (a.p_ != b.p_) return false;
    for (int k = 0; k <= std::max(a.q_, b.q_); ++k) {
      const bool ina = k <= a.q_, inb = k <= b.q_;
      if (ina && inb) {
        if (a.L_[k] != b.L_[k]) return false;
      } else if (ina) {
        if (!a.L_[k].is_zero()) return false;
      } else if (!b.L_[k].is_zero()) {
        return false;
      }
    }
    return true;
  }
  friend bool operator!=(const PolyMat& a, const PolyMat& b) { return !(a == b); }

  PolyMat pow(unsigned n) const {
    PolyMat r = identity(p_);
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  static PolyMat identity(int p) { return PolyMat(Mat<T>::identity(p)); }

  Poly<T> trace() const {
    std::vector<T> c(q_ + 1, T(0));
    for (int k = 0; k <= q_; ++k) c[k] = L_[k].trace();
    return Poly<T>(std::move(c));
  }

 private:
  int p_ = 0, q_ = 0;
  std::vector<Mat<T>> L_;

  static void check_size(const PolyMat& a, const PolyMat& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PolyMat size mismatch");
  }
  static PolyMat combine(const PolyMat& a, const PolyMat& b, bool subtract) {
    check_size(a, b);
    PolyMat out(a.p_, std::max(a.q_, b.q_));
    for (int k = 0; k <= a.q_; ++k) out.L_[k] += a.L_[k];
    for (int k = 0; k <= b.q_; ++k) {
      if (subtract)
        out.L_[k] -= b.L_[k];
      else
        out.L_[k] += b.L_[k];
    }
    return out;
  }
};

template <class T>
PolyMat<T> commutator(const PolyMat<T>& a, const PolyMat<T>& b) {
  return a * b - b * a;
}

/// (L(x) / x^j)_+ = sum_{k >= 0} L_{k+j} x^k, with bound max(q - j, 0).
template <class T>
PolyMat<T> truncate_div(const PolyMat<T>& L, int j) {
  if (j < 0) throw std::invalid_argument("truncate_div needs j >= 0");
  PolyMat<T> out(L.p(), std::max(L.q() - j, 0));
  for (int k = 0; k + j <= L.q(); ++k) out.coeff(k) = L.coeff(k + j);
  return out;
}

/// H_{i,j}(L) = (1/(i+1)) * [x^j] Tr L(x)^{i+1}; zero when j < 0 or j > (i+1)q.
template <class T>
T hamiltonian(const PolyMat<T>& L, int i, int j) {
  if (i < 0) throw std::invalid_argument("hamiltonian needs i >= 0");
  if (j < 0 || j > (i + 1) * L.q()) return T(0);
  return scale(L.pow(i + 1).trace().coeff(j), Rational(1, i + 1));
}

/// Polynomial in y with coefficients in T[x]; the y^j coefficient is ycoeff(j).
template <class T>
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(Poly<Poly<T>> nested) : y_(std::move(nested)) {}
  /// Table constructor: table[i][j] is the coefficient of x^i y^j.
  static BivarPoly from_table(const std::vector<std::vector<T>>& table) {
    int maxj = -1;
    for (const auto& row : table) maxj = std::max(maxj, static_cast<int>(row.size()) - 1);
    std::vector<Poly<T>> ys(std::max(maxj + 1, 0));
    for (int j = 0; j <= maxj; ++j) {
      std::vector<T> xc(table.size(), T(0));
      for (std::size_t i = 0; i < table.size(); ++i)
        if (j < static_cast<int>(table[i].size())) xc[i] = table[i][j];
      ys[j] = Poly<T>(std::move(xc));
    }
    return BivarPoly(Poly<Poly<T>>(std::move(ys)));
  }
  /// Builds sum_j s_j(x) y^j from the list of y-coefficients.
  static BivarPoly from_ycoeffs(std::vector<Poly<T>> ys) { return BivarPoly(Poly<Poly<T>>(std::move(ys))); }

  const Poly<Poly<T>>& nested() const { return y_; }
  int deg_y() const { return y_.degree(); }
  int deg_x() const {
    int d = -1;
    for (const auto& c : y_.coeffs()) d = std::max(d, c.degree());
    return d;
  }
  Poly<T> ycoeff(int j) const { return y_.coeff(j); }
  T coeff(int i, int j) const { return y_.coeff(j).coeff(i); }
  bool is_zero() const { return y_.is_zero(); }

  std::vector<std::vector<T>> table() const {
    const int dx = deg_x(), dy = deg_y();
    std::vector<std::vector<T>> t(std::max(dx + 1, 0), std::vector<T>(std::max(dy + 1, 0), T(0)));
    for (int i = 0; i <= dx; ++i)
      for (int j = 0; j <= dy; ++j) t[i][j] = coeff(i, j);
    return t;
  }

  /// P(x0, y) as a polynomial in y.
  Poly<T> eval_x(const T& x0) const { return y_.map([&](const Poly<T>& c) { return c(x0); }); }

  /// d/dy
  BivarPoly dy() const { return BivarPoly(y_.derivative()); }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<T>()));
    return BivarPoly<U>(y_.map([&](const Poly<T>& c) { return c.map(f); }));
  }

  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) { return BivarPoly(a.y_ + b.y_); }
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return BivarPoly(a.y_ - b.y_); }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) { return BivarPoly(a.y_ * b.y_); }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.y_ == b.y_; }
  friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int j = deg_y(); j >= 0; --j) {
      const Poly<T> c = ycoeff(j);
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string cs = poly_to_string(c);
      if (j == 0) {
        out += cs;
        continue;
      }
      if (cs != "1") out += "(" + cs + ")*";
      out += "y";
      if (j > 1) out += "^" + std::to_string(j);
    }
    return out;
  }

 private:
  Poly<Poly<T>> y_;
};

/// det(y I - L(x)), monic of degree p in y.
template <class T>
BivarPoly<T> char_poly(const PolyMat<T>& L) {
  const int p = L.p();
  std::vector<std::vector<Poly<Poly<T>>>> m(p, std::vector<Poly<Poly<T>>>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      std::vector<Poly<T>> ys{-L.entry(i, j)};
      if (i == j) ys.push_back(Poly<T>(T(1)));
      m[i][j] = Poly<Poly<T>>(std::move(ys));
    }
  return BivarPoly<T>(determinant(m));
}

/// True iff the minimal polynomial of L(c) has degree p, i.e. the Krylov
/// family I, A, ..., A^{p-1} of A = L(c) is linearly independent.
template <class T>
bool regularity_check(const PolyMat<T>& L, const T& c) {
  const int p = L.p();
  const Mat<T> A = L.eval(c);
  Mat<T> krylov(p, p * p);
  Mat<T> power = Mat<T>::identity(p);
  for (int r = 0; r < p; ++r) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) krylov(r, i * p + j) = power(i, j);
    power = power * A;
  }
  return rank(krylov) == p;
}

}  // namespace laxcyc
