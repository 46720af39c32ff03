#include "laxcyc/random.hpp"

namespace laxcyc {

PolyMat<Cyclotomic> random_polymat(Rng& rng, int p, int q) {
  PolyMat<Cyclotomic> L(p, q);
  for (int k = 0; k <= q; ++k)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) L.set(i, j, k, Cyclotomic(rng.rational()));
  return L;
}

PolyMat<Cyclotomic> random_fixed(Rng& rng, int p, int q, const EVector& e) {
  PolyMat<Cyclotomic> L(p, q);
  for (int k = 0; k <= q; ++k)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (admissible(e, p, i, j, k)) L.set(i, j, k, Cyclotomic(rng.rational()));
  return L;
}

PolyMat<Cyclotomic> random_generic_fixed(Rng& rng, int p, int q, const EVector& e) {
  PolyMat<Cyclotomic> L(p, q);
  for (int k = 0; k <= q; ++k)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (admissible(e, p, i, j, k)) L.set(i, j, k, Cyclotomic(rng.wide_rational()));
  return L;
}

PolyMat<Complex> to_complex(const PolyMat<Cyclotomic>& L) {
  return L.map([](const Cyclotomic& c) { return c.embed(); });
}

}  // namespace laxcyc
