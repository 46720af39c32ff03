#pragma once

#include <cstdint>
#include <random>

#include "laxcyc/cyclotomic.hpp"
#include "laxcyc/matrix.hpp"
#include "laxcyc/polymat.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc {

/// Seeded sampler. Rationals are n/d with n uniform in [-9, 9] and d in [1, 4];
/// wide rationals use n in [-10^6, 10^6] and d in [1, 1000].
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Rational rational() {
    Rational r(uniform(-9, 9), uniform(1, 4));
    r.canonicalize();
    return r;
  }
  Rational wide_rational() {
    Rational r(static_cast<long>(std::uniform_int_distribution<long>(-1000000, 1000000)(gen_)),
               static_cast<long>(std::uniform_int_distribution<long>(1, 1000)(gen_)));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational() {
    Rational r;
    do r = rational();
    while (sgn(r) == 0);
    return r;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Uniform random coefficients in every slot.
PolyMat<Cyclotomic> random_polymat(Rng& rng, int p, int q);
/// Random element of the fixed locus of sigma_e (zero off the admissible slots).
PolyMat<Cyclotomic> random_fixed(Rng& rng, int p, int q, const EVector& e);
/// Same locus with wide coefficients; small-height samples hit coincident
/// eigenvalues of the constant and leading terms often enough to matter for
/// rank statements.
PolyMat<Cyclotomic> random_generic_fixed(Rng& rng, int p, int q, const EVector& e);
/// Random invertible matrix supported on the given pattern (pattern(i, j) true = free entry).
template <class Pattern>
Mat<Cyclotomic> random_invertible(Rng& rng, int p, Pattern&& pattern) {
  for (;;) {
    Mat<Cyclotomic> g(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (pattern(i, j)) g(i, j) = Cyclotomic(rng.rational());
    if (!determinant(g).is_zero()) return g;
  }
}

PolyMat<Complex> to_complex(const PolyMat<Cyclotomic>& L);

}  // namespace laxcyc
