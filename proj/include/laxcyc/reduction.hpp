#pragma once

#include <string>
#include <vector>

#include "laxcyc/multipoly.hpp"
#include "laxcyc/poisson.hpp"
#include "laxcyc/polymat.hpp"
#include "laxcyc/random.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc {

/// phit(x) = sum_k c'_k x^k with c'_{d'+1} != 0, and phi(x) = x phit(x^p).
struct PhiSpec {
  int dprime = 1;
  std::vector<Rational> ctilde;  // c'_0 .. c'_{d'+1}

  /// phit(x) = x^{d'+1}
  static PhiSpec standard(int dprime);
  PhiSpec(int dprime, std::vector<Rational> ctilde);
  PhiSpec() = default;

  const Rational& top() const { return ctilde.back(); }
  /// Coefficients of phi(x) = sum_k c'_k x^{pk+1} as a bracket spec.
  BracketSpec phi(int p) const;
};

/// B in M^{Delta_e}_{p,d} re-typed with degree bound d + p.
PolyMat<Cyclotomic> embed_eta(const PolyMat<Cyclotomic>& B, int d, const EVector& e);
/// Violated image constraints of a point with bound d + p, as readable strings
/// ("b^4_11" etc.); empty means B lies in the image of eta.
std::vector<std::string> eta_image_violations(const PolyMat<Cyclotomic>& B, int d, const EVector& e);
inline bool is_in_eta_image(const PolyMat<Cyclotomic>& B, int d, const EVector& e) {
  return eta_image_violations(B, d, e).empty();
}
/// Fixed, bound d + p, and the x^{d+p} coefficient of Tr B vanishes.
bool is_extended_point(const PolyMat<Cyclotomic>& B, int d, const EVector& e);
/// Random extended point (random fixed element with its top trace removed).
PolyMat<Cyclotomic> random_extended_point(Rng& rng, int p, int d, const EVector& e);

/// Comoment of E_ij, (i, j) in T_0 (0-based): B -> b^{d+p}_ji / c'_{d'+1}.
CoordFunction comoment(int p, const EVector& e, int i, int j, const PhiSpec& phi);

/// {mu(E), mu(F)}^red_phi = mu([E, F]) at `samples` random extended points, all T_0 pairs.
bool lie_homo_check(int p, const EVector& e, const PhiSpec& phi, int samples, Rng& rng);
/// [B, E] = -({b_ij(x), mu(E)}^red_phi(B))_ij for every T_0 generator and E = I.
bool infinitesimal_action_check(const EVector& e, const PhiSpec& phi, const PolyMat<Cyclotomic>& B);
/// (1/c'){b_ij(x), b^{p+d}_mn}^red_phi = -delta_jm b_in(x) + delta_in b_mj(x), symbolically, (m, n) in T_0.
bool b_br_check(int p, const EVector& e, const PhiSpec& phi);

enum class CasimirKind { ZeroField, TangentToOrbits, NotCasimirRange };
std::string to_string(CasimirKind k);
/// Classifies (B^i / x^{pm})_+ over sampled image points of eta.
CasimirKind casimir_certificate(int p, const EVector& e, int dprime, int i, int m, int samples, Rng& rng);

/// H_{i,j}(g B g^{-1}) = H_{i,j}(B) for sampled g in G_{Delta_e} (and, for
/// e = omega, elements of every D_k^*); j must be a multiple of p.
bool g_invariance_check(int p, const EVector& e, int dprime, int i, int j, int samples, Rng& rng);

/// Reduced Lax field of index (i, pm) at an image point of eta satisfies the
/// (linear) image constraints.
bool eta_tangency_check(const PolyMat<Cyclotomic>& B_ext, int d, const EVector& e, int i, int m);

}  // namespace laxcyc
