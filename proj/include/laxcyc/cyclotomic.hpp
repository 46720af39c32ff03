#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace laxcyc {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// "num/den" (den omitted when it is 1).
std::string to_string(const Rational& r);
/// Accepts "n", "n/d" and decimal-free integers; throws std::invalid_argument.
Rational parse_rational(const std::string& s);

bool is_prime(int n);

/// An element of the cyclotomic field Q(zeta_p), stored in the power basis
/// {1, zeta, ..., zeta^{p-2}} modulo 1 + zeta + ... + zeta^{p-1} = 0.
///
/// order() == 0 marks an order-agnostic rational; it adopts the order of the
/// other operand in mixed arithmetic. Two elements of different non-zero
/// orders cannot be combined.
class Cyclotomic {
 public:
  Cyclotomic() : c_(1) {}
  Cyclotomic(int v) : c_(1, Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& r) : c_(1, r) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int order, std::vector<Rational> coeffs);

  /// zeta_p^k for any integer k.
  static Cyclotomic zeta_pow(int p, long k);
  static Cyclotomic zeta(int p) { return zeta_pow(p, 1); }

  int order() const { return order_; }
  /// Power-basis coordinates; length order()-1 (1 for an order-agnostic rational).
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// The rational value; throws std::domain_error if !is_rational().
  Rational rational() const;

  /// Same element re-expressed with the given order (only valid for
  /// rationals or when order matches).
  Cyclotomic with_order(int p) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);

  /// Multiplicative inverse; throws std::domain_error on zero.
  Cyclotomic inverse() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic pow(unsigned n) const;

  /// Evaluation at zeta = exp(2 pi i / p).
  Complex embed() const;

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& a);

 private:
  int order_ = 0;
  std::vector<Rational> c_;

  void promote(int p);
};

Complex embed(const Cyclotomic& a);

}  // namespace laxcyc
