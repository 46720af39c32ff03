#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include "laxcyc/cyclotomic.hpp"

namespace laxcyc {

// Uniform helpers so that the polynomial and matrix templates can run over
// exact (Cyclotomic), floating (Complex) and symbolic coefficient rings.

inline bool is_zero(const Cyclotomic& a) { return a.is_zero(); }
inline bool is_zero(const Complex& a) { return a.real() == 0.0 && a.imag() == 0.0; }
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }

namespace detail {
// Unqualified call so that overloads declared after this header (Poly,
// CoordFunction) are still found through argument-dependent lookup.
template <class T>
bool zero_of(const T& v) {
  return is_zero(v);
}
}  // namespace detail

inline Cyclotomic scale(const Cyclotomic& a, const Rational& r) {
  Cyclotomic out = a;
  out *= r;
  return out;
}
inline Complex scale(const Complex& a, const Rational& r) { return a * r.get_d(); }

inline Complex to_complex(const Cyclotomic& a) { return a.embed(); }
inline Complex to_complex(const Complex& a) { return a; }

/// Field division; exact for Cyclotomic.
inline Cyclotomic exact_div(const Cyclotomic& a, const Cyclotomic& b) { return a / b; }
inline Complex exact_div(const Complex& a, const Complex& b) { return a / b; }

template <class T>
struct scalar_traits {
  static constexpr bool exact = true;
};
template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

inline double magnitude(const Complex& a) { return std::abs(a); }

}  // namespace laxcyc
