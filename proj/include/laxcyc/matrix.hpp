#pragma once

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "laxcyc/scalar.hpp"

namespace laxcyc {

/// Dense row-major matrix over a commutative ring T.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat unit(int n, int i, int j) {
    Mat m(n, n);
    m(i, j) = T(1);
    return m;
  }
  static Mat diagonal(const std::vector<T>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!detail::zero_of(v)) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<T>()));
    Mat<U> out(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Mat operator-() const {
    Mat m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  Mat& operator+=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    Mat out(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (detail::zero_of(aik)) continue;
        for (int j = 0; j < b.c_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Mat operator*(const T& s, Mat m) {
    for (auto& v : m.a_) v = s * v;
    return m;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (!(a.a_[k] == b.a_[k])) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  T trace() const {
    T t(0);
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  Mat pow(unsigned n) const {
    Mat result = identity(r_);
    for (unsigned k = 0; k < n; ++k) result = result * *this;
    return result;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;

  void check_same(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
};

template <class T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
  return a * b - b * a;
}

namespace detail {

template <class T>
T cofactor_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T acc(0);
  for (std::size_t col = 0; col < n; ++col) {
    if (is_zero(m[0][col])) continue;
    std::vector<std::vector<T>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    T term = m[0][col] * cofactor_det(minor);
    if (col % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// Fraction-free Gaussian elimination; every division is exact in an
// integral domain.
template <class T>
T bareiss_det(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  bool negate = false;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      std::size_t piv = k + 1;
      while (piv < n && is_zero(m[piv][k])) ++piv;
      if (piv == n) return T(0);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  T d = n ? m[n - 1][n - 1] : T(1);
  return negate ? -d : d;
}

}  // namespace detail

/// Determinant over an integral domain: cofactor expansion up to 4x4,
/// Bareiss elimination beyond that (when the ring has exact division).
template <class T>
T determinant(const std::vector<std::vector<T>>& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
  if constexpr (requires(const T& a) { exact_div(a, a); }) {
    if (m.size() > 4) return detail::bareiss_det(m);
  }
  return detail::cofactor_det(m);
}

template <class T>
T determinant(const Mat<T>& a) {
  std::vector<std::vector<T>> m(a.rows(), std::vector<T>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return determinant(m);
}

/// Reduced row echelon form over an exact field. Returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const T inv = exact_div(T(1), m(row, col));
    for (int j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const T f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
int rank(Mat<T> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of the right kernel {v : m v = 0} over an exact field.
template <class T>
std::vector<std::vector<T>> kernel(Mat<T> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse over an exact field; throws std::domain_error if singular.
template <class T>
Mat<T> inverse(const Mat<T>& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Mat<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  const auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Mat<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace laxcyc
