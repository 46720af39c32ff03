#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laxcyc/multipoly.hpp"
#include "laxcyc/polymat.hpp"
#include "laxcyc/random.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc {

/// A bracket sum_mu c_mu {,}_mu; weights[mu] = c_mu, i.e. the coefficients
/// of phi(x) = sum_mu c_mu x^mu. A single-mu bracket is a unit vector.
struct BracketSpec {
  std::vector<Rational> weights;

  static BracketSpec single(int mu);
  static BracketSpec phi(std::vector<Rational> coeffs);

  bool is_single() const;
  /// The index of a single-mu spec; throws otherwise.
  int mu() const;
  /// Largest mu with a non-zero weight (-1 if none).
  int degree() const;
  std::string to_string() const;
};

/// {l^k_ij, l^l_mn}_mu with 0-based i, j, m, n.
CoordFunction coord_bracket(const VarSpace& s, int i, int j, int k, int m, int n, int l, int mu);

/// Table of brackets between coordinate functions, filled on demand.
class BracketTable {
 public:
  explicit BracketTable(VarSpace s) : space_(s), cache_(static_cast<std::size_t>(s.count()) * s.count()) {}
  virtual ~BracketTable() = default;
  BracketTable(const BracketTable&) = delete;
  BracketTable& operator=(const BracketTable&) = delete;

  const VarSpace& space() const { return space_; }
  const CoordFunction& coord(int a, int b);

 protected:
  virtual CoordFunction compute(int a, int b) = 0;
  void store(int a, int b, CoordFunction f);

 private:
  VarSpace space_;
  std::vector<std::optional<CoordFunction>> cache_;
};

/// The pencil member sum_mu c_mu {,}_mu on M_{p,q}.
class LoopBracket : public BracketTable {
 public:
  LoopBracket(VarSpace s, BracketSpec spec);

 protected:
  CoordFunction compute(int a, int b) override;

 private:
  BracketSpec spec_;
};

/// Reduced bracket on the fixed locus of sigma_e, from the closed formula in
/// generating functions (division by x^p - y^p). Coordinates outside the
/// admissible set are identically zero.
class ReducedBracket : public BracketTable {
 public:
  /// phi must have the form x * phit(x^p) and degree <= q + 1.
  ReducedBracket(VarSpace s, EVector e, BracketSpec phi);
  const EVector& e() const { return e_; }

 protected:
  CoordFunction compute(int a, int b) override;

 private:
  EVector e_;
  BracketSpec phi_;
  void fill_block(int i, int j, int m, int n);
};

/// Independent construction of the same reduced bracket: average l^k_ij over
/// the sigma orbit, bracket with l^l_mn upstairs, restrict to the fixed locus.
class ExtensionBracket : public BracketTable {
 public:
  /// Every mu with non-zero weight must satisfy mu = 1 (mod p).
  ExtensionBracket(VarSpace s, EVector e, BracketSpec spec);

 protected:
  CoordFunction compute(int a, int b) override;

 private:
  EVector e_;
  LoopBracket loop_;
};

/// Leibniz extension of a coordinate bracket table.
CoordFunction bracket(const CoordFunction& f, const CoordFunction& g, BracketTable& table);

/// {{a,b},c} + {{b,c},a} + {{c,a},b}
CoordFunction jacobiator(const CoordFunction& a, const CoordFunction& b, const CoordFunction& c, BracketTable& table);

/// sigma^* F: each l^k_ij is multiplied by zeta^{k + e_j - e_i}.
CoordFunction sigma_pullback(const CoordFunction& f, const VarSpace& s, const EVector& e);
/// Sets every non-admissible coordinate to zero.
CoordFunction restrict_to_fixed(const CoordFunction& f, const VarSpace& s, const EVector& e);
bool admissible_var(const VarSpace& s, const EVector& e, int v);

/// The matrix (l_ij(x)) with symbolic entries.
PolyMat<CoordFunction> symbolic_matrix(const VarSpace& s);
/// Same with non-admissible entries set to zero.
PolyMat<CoordFunction> symbolic_fixed_matrix(const VarSpace& s, const EVector& e);

/// Value of F at the point L (whose degree bound must match the space).
Cyclotomic evaluate(const CoordFunction& f, const PolyMat<Cyclotomic>& L);
Complex evaluate(const CoordFunction& f, const PolyMat<Complex>& L);

/// Bivariate polynomial in (x, y) with function coefficients.
using XYPoly = std::map<std::pair<int, int>, CoordFunction>;

/// (x - y) sum_{k,l} {l^k_ij, l^l_mn} x^k y^l against the cleared closed form,
/// for every (i, j, m, n).
bool generating_identity_check(int p, int q, const BracketSpec& spec);
/// The auxiliary identity in commuting variables xi^0..xi^q, for one s.
bool auxiliary_identity_check(int q, int s);
/// sum_k zeta^{kl} / (t - zeta^k) = p t^{l-1} / (t^p - 1), denominators cleared.
bool zeta_partial_fraction_check(int p, int l);

/// sigma^* {a, b}_mu = {sigma^* a, sigma^* b}_mu for all coordinate pairs.
bool is_poisson_automorphism(const EVector& e, int mu, int p, int q);

/// Tangent vector -{l^k_ab, H_{i, j-1+mu}}_mu at L.
PolyMat<Cyclotomic> hamiltonian_vf(const PolyMat<Cyclotomic>& L, int i, int j, int mu);
/// Tangent vector -{b^k_ab, H_{i, p(m+n)}}^red_{1+pn} at a fixed point B.
PolyMat<Cyclotomic> reduced_hamiltonian_vf(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m, int n);

/// H_{i,j} as a function of the coordinates of M_{p,q}.
CoordFunction symbolic_hamiltonian(const VarSpace& s, int i, int j);

/// Antisymmetry and Jacobi on `triples` random coordinate triples.
bool jacobi_check(BracketTable& table, int triples, Rng& rng);
/// Jacobi for c_a {,}_a + c_b {,}_b with random non-zero rational c's.
bool compatibility_check(int p, int q, int mu_a, int mu_b, int triples, Rng& rng);
/// {H_{i,j}, H_{k,l}}_mu == 0 for all 0 <= i, k < p, 0 <= j <= (i+1) q.
bool involutivity_check(int p, int q, int mu);
/// The j in [0, (i+1) q] for which H_{i,j} brackets to zero with every coordinate.
std::vector<int> casimir_indices(int p, int q, int mu, int i);

}  // namespace laxcyc
