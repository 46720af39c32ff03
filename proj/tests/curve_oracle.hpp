#pragma once

#include <algorithm>
#include <vector>

#include "laxcyc/spectral.hpp"

namespace laxcyc {

// Ground truth over C for monic curves of y-degree 2 or 3, independent of the
// monodromy code. Quadratics: y^2 + b y + c splits iff b^2 - 4c is a constant
// times a square, i.e. every square-free factor has even multiplicity (Yun).
// Cubics: a linear factor y - r(x) needs the maximum of
// {3k, deg s1 + 2k, deg s2 + k, deg s3} at k = deg r to be attained twice.
enum class CurveTruth { Irreducible, Reducible, Undecided };

inline bool constant_times_square(Poly<Cyclotomic> D) {
  int mult = 1;
  Poly<Cyclotomic> g = gcd(D, D.derivative());
  Poly<Cyclotomic> w = exact_div(D, g);
  while (w.degree() > 0) {
    const Poly<Cyclotomic> y = gcd(w, g);
    if (exact_div(w, y).degree() > 0 && mult % 2 == 1) return false;
    w = y;
    g = exact_div(g, y);
    ++mult;
  }
  return true;
}

inline CurveTruth curve_oracle(const Curve& F) {
  if (F.deg_y() == 2) {
    const Poly<Cyclotomic> b = F.ycoeff(1), c = F.ycoeff(0);
    return constant_times_square(b * b - Poly<Cyclotomic>(4) * c) ? CurveTruth::Reducible : CurveTruth::Irreducible;
  }
  if (F.deg_y() == 3) {
    const int top = std::max({F.ycoeff(2).degree(), F.ycoeff(1).degree(), F.ycoeff(0).degree(), 0});
    for (int k = 0; k <= top; ++k) {
      std::vector<int> terms{3 * k};
      if (!F.ycoeff(2).is_zero()) terms.push_back(F.ycoeff(2).degree() + 2 * k);
      if (!F.ycoeff(1).is_zero()) terms.push_back(F.ycoeff(1).degree() + k);
      if (!F.ycoeff(0).is_zero()) terms.push_back(F.ycoeff(0).degree());
      const int mx = *std::max_element(terms.begin(), terms.end());
      if (std::count(terms.begin(), terms.end(), mx) >= 2) return CurveTruth::Undecided;
    }
    return CurveTruth::Irreducible;
  }
  return CurveTruth::Undecided;
}

}  // namespace laxcyc
