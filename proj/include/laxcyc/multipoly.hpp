#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "laxcyc/cyclotomic.hpp"
#include "laxcyc/scalar.hpp"

namespace laxcyc {

/// Indexing of the coordinates l^k_{ij} (0-based i, j; 0 <= k <= q) of the
/// space of p x p matrix polynomials of degree <= q.
struct VarSpace {
  int p = 0;
  int q = 0;

  int count() const { return p * p * (q + 1); }
  int id(int i, int j, int k) const { return (i * p + j) * (q + 1) + k; }
  int row(int v) const { return v / ((q + 1) * p); }
  int col(int v) const { return (v / (q + 1)) % p; }
  int power(int v) const { return v % (q + 1); }
  /// "l^k_ij" with 1-based i, j.
  std::string name(int v) const;

  friend bool operator==(const VarSpace& a, const VarSpace& b) { return a.p == b.p && a.q == b.q; }
};

/// Sparse multivariate polynomial over Q(zeta_p). A monomial is the sorted
/// list of its variable ids (with repetition).
class CoordFunction {
 public:
  using Monomial = std::vector<int>;
  using Terms = std::map<Monomial, Cyclotomic>;

  CoordFunction() = default;
  CoordFunction(int c);                // NOLINT(google-explicit-constructor)
  CoordFunction(const Cyclotomic& c);  // NOLINT(google-explicit-constructor)

  static CoordFunction var(int v, const Cyclotomic& c = Cyclotomic(1));

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int degree() const;
  /// Constant term (zero if absent).
  Cyclotomic constant() const;
  bool is_constant() const;

  void add_term(const Monomial& m, const Cyclotomic& c);

  CoordFunction operator-() const;
  CoordFunction& operator+=(const CoordFunction& o);
  CoordFunction& operator-=(const CoordFunction& o);
  CoordFunction& operator*=(const CoordFunction& o) { return *this = *this * o; }
  friend CoordFunction operator+(CoordFunction a, const CoordFunction& b) { return a += b; }
  friend CoordFunction operator-(CoordFunction a, const CoordFunction& b) { return a -= b; }
  friend CoordFunction operator*(const CoordFunction& a, const CoordFunction& b);
  friend bool operator==(const CoordFunction& a, const CoordFunction& b) { return a.t_ == b.t_; }
  friend bool operator!=(const CoordFunction& a, const CoordFunction& b) { return !(a == b); }

  CoordFunction scaled(const Cyclotomic& c) const;
  CoordFunction derivative(int v) const;
  /// Variables occurring in the polynomial, ascending.
  std::vector<int> variables() const;

  /// Substitutes v -> factor(v) * v for every variable.
  CoordFunction rescale_vars(const std::function<Cyclotomic(int)>& factor) const;
  /// Sets every variable with keep(v) == false to zero.
  CoordFunction restrict_to(const std::function<bool(int)>& keep) const;
  /// Substitutes every variable by a polynomial.
  CoordFunction substitute(const std::function<CoordFunction(int)>& image) const;

  template <class T, class Value>
  T eval(Value&& value) const {
    T acc(0);
    for (const auto& [mono, c] : t_) {
      T term = convert<T>(c);
      for (int v : mono) term = term * value(v);
      acc += term;
    }
    return acc;
  }

  std::string to_string(const VarSpace& space) const;
  std::string to_string() const;

 private:
  Terms t_;

  template <class T>
  static T convert(const Cyclotomic& c) {
    if constexpr (std::is_same_v<T, Complex>)
      return c.embed();
    else
      return T(c);
  }
};

inline bool is_zero(const CoordFunction& f) { return f.is_zero(); }
inline CoordFunction scale(const CoordFunction& f, const Rational& r) { return f.scaled(Cyclotomic(r)); }

}  // namespace laxcyc
