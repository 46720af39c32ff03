#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laxcyc/cyclotomic.hpp"
#include "laxcyc/polymat.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc {

using Curve = BivarPoly<Cyclotomic>;

/// P = y^p + sum_i s_i(x) y^{p-i} with deg s_i <= i d.
bool v_membership(const Curve& P, int p, int d);

/// p(x) = r(x^n) -> r, or nullopt if some exponent is not a multiple of n.
template <class T>
std::optional<Poly<T>> deflate(const Poly<T>& f, int n) {
  std::vector<T> out;
  for (int k = 0; k <= f.degree(); ++k) {
    if (is_zero(f.coeffs()[k])) continue;
    if (k % n != 0) return std::nullopt;
    if (static_cast<int>(out.size()) <= k / n) out.resize(k / n + 1, T(0));
    out[k / n] = f.coeffs()[k];
  }
  return Poly<T>(std::move(out));
}

/// Q with P(x, y) = Q(x^p, y), or nullopt (NotInvariant).
std::optional<Curve> quotient_Q(const Curve& P, int p);

struct GenusData {
  int p = 0;
  int d = 0;
  long genus = 0;  // (p-1)(pd-2)/2
};
GenusData genus(int p, int d);
/// 2 g_P - 2 = p (2 g_Q - 2) + 2p (p - 1) with g_P = genus(p, p d'), g_Q = genus(p, d').
bool rh_consistency(int p, int dprime);

struct SplFlags {
  bool q0_squarefree = false;
  bool qinf_squarefree = false;
  Poly<Cyclotomic> q0;    // Q(0, y)
  Poly<Cyclotomic> qinf;  // Q(inf, y) = sum_i s_i(inf) y^{p-i}, s_i(inf) = [x^{i d'}] s_i
  bool passes() const { return q0_squarefree && qinf_squarefree; }
};
SplFlags spl_cert(const Curve& Q, int p, int dprime);

/// disc_y of a curve monic in y, as a polynomial in x (Sylvester resultant).
Poly<Cyclotomic> discriminant_y(const Curve& P);
/// All complex roots of a polynomial (companion-matrix eigenvalues).
std::vector<Complex> poly_roots(const Poly<Complex>& f);

struct BranchData {
  Poly<Cyclotomic> discriminant;
  std::vector<Complex> finite_branch_points;  // distinct roots of disc_y
  bool branch_at_zero = false;                // disc vanishes at x = 0
  int fiber_over_zero = 0;                    // distinct roots of Q(0, y)
  int fiber_over_infinity = 0;                // distinct roots of Q(inf, y)
  int fq_branch_count = 0;                    // the two fibers together
};
/// Throws std::domain_error when the discriminant vanishes identically.
BranchData branch_points(const Curve& Q, int p, int dprime);

enum class Verdict { IrreducibleExact, IrreducibleMonodromy, Reducible, Unknown };
std::string to_string(Verdict v);

struct MonodromyResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::vector<int>> permutations;  // one per branch point
  std::vector<std::vector<int>> orbits;
  Complex base_point{0.0, 0.0};
  std::optional<Curve> factor;  // exactly verified factor, when found
  std::string diagnostic;
};
/// Monodromy of the roots of P(x, y) = 0 (monic in y) around every finite
/// branch point: circles of radius 0.4 x nearest-neighbour distance, 256
/// steps each, Newton correction and nearest-root matching, collision
/// threshold 1e-8.
MonodromyResult monodromy(const Curve& P);

struct CurveCert {
  bool monic = false;
  Verdict exact_verdict = Verdict::Unknown;
  std::string exact_method;
  Verdict monodromy_verdict = Verdict::Unknown;
  Verdict verdict = Verdict::Unknown;  // exact if available, else monodromy
  std::optional<Curve> factor;
  std::string diagnostic;
};
/// Exact criteria first (linearity, zero discriminant, specialization at
/// x0 in {0, 1, -1, 2, -2, 3}), then monodromy; both verdicts are reported.
CurveCert irreducible_cert(const Curve& P, bool run_monodromy = true);
/// Only the exact criteria.
CurveCert exact_irreducibility(const Curve& P);

/// Fixed verification corpus: reducible curves carry the factorization they
/// were built from, irreducible ones an empty factor list.
struct CorpusCurve {
  std::string label;
  Curve curve;
  std::vector<Curve> factors;
};
std::vector<CorpusCurve> irreducibility_corpus();

/// Elementary symmetric functions from power sums (Newton's identities).
template <class T>
std::vector<T> newton_convert(const std::vector<T>& f) {
  std::vector<T> e{T(1)};
  for (std::size_t k = 1; k <= f.size(); ++k) {
    T acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      const T term = e[k - i] * f[i - 1];
      if (i % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    e.push_back(scale(acc, Rational(1, static_cast<long>(k))));
  }
  e.erase(e.begin());
  return e;
}

struct DiagramResult {
  std::vector<Poly<Cyclotomic>> alpha;  // h_1..h_p with x^p -> x
  Curve chi;                            // quotient of char_poly
  Curve psi_of_alpha;                   // rebuilt from alpha via Newton
  bool commutes = false;
};
/// Throws std::invalid_argument if L is not fixed, std::logic_error if the
/// characteristic polynomial is not x^p-invariant.
DiagramResult alpha_and_chi(const PolyMat<Cyclotomic>& L, const EVector& e);

int s_prime(int p, int dprime);
/// Rank of the Jacobian of (H_{i,pj}), 0 <= i < p, 0 <= j <= (i+1) d', with
/// respect to the fixed-basis coordinates of M^{Delta_e}_{p, p d'}, at L.
int hamiltonian_rank(const EVector& e, int p, int dprime, const PolyMat<Cyclotomic>& L);

}  // namespace laxcyc
