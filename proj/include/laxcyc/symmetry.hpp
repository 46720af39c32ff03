#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laxcyc/cyclotomic.hpp"
#include "laxcyc/matrix.hpp"
#include "laxcyc/polymat.hpp"

namespace laxcyc {

/// Residue vector (e_1, ..., e_p), entries in [0, p).
using EVector = std::vector<int>;

class NotTorsionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

EVector reduce_e(EVector e, int p);
EVector zero_e(int p);
/// (0, 1, ..., p-1)
EVector omega(int p);

/// mu_t = #{i : e_i = t}
std::vector<int> multiplicities(const EVector& e, int p);
/// Ascending e vector with the given multiplicities.
EVector from_multiplicities(const std::vector<int>& mu);
/// All length-`parts` vectors of non-negative integers summing to `total`.
std::vector<std::vector<int>> compositions(int total, int parts);

/// Representative set E, one vector per class under e_i -> c + e_{s(i)}.
/// Classes are represented by the lexicographically largest cyclic rotation
/// of their multiplicity vector. Throws std::invalid_argument unless p is prime.
std::vector<EVector> enumerate_E(int p);
/// (C(2p-1, p-1) - 1) / p + 1
std::size_t e_count_formula(int p);
EVector canonicalize(const EVector& e, int p);

/// True iff k = e_i - e_j (mod p); 0-based i, j.
bool admissible(const EVector& e, int p, int i, int j, int k);
/// Eigenvalue exponent of l^k_{ij} under sigma: k + e_j - e_i (mod p).
int sigma_exponent(const EVector& e, int p, int i, int j, int k);

/// diag(zeta^{e_1}, ..., zeta^{e_p})
Mat<Cyclotomic> delta_matrix(const EVector& e, int p);
/// tau(L)(x) = L(zeta x)
PolyMat<Cyclotomic> tau(const PolyMat<Cyclotomic>& L);
/// Delta_e^{-1} L(zeta x) Delta_e, computed coordinate-wise.
PolyMat<Cyclotomic> sigma_action(const EVector& e, const PolyMat<Cyclotomic>& L);
bool is_fixed(const PolyMat<Cyclotomic>& L, const EVector& e);

struct FixedBasis {
  int p = 0;
  int d = 0;
  EVector e;
  /// (i, j, k), 0-based i and j.
  std::vector<std::array<int, 3>> basis;
  std::size_t dimension() const { return basis.size(); }
};
/// Monomials E_ij x^k spanning the fixed space; p need not be prime here.
FixedBasis fixed_basis(int p, int d, const EVector& e);

/// Class in E of a p-torsion element of PGL_p given by a representative with
/// exact entries. Throws NotTorsionError if the p-th power is not scalar.
EVector classify_torsion(const Mat<Cyclotomic>& delta, int p);
/// Floating-point variant (principal p-th root rescaling, angle rounding).
EVector classify_torsion_float(const Mat<Complex>& delta, int p, double tol = 1e-8);

enum class ConjugatorStatus { Found, NotSymmetric, AmbiguousStabilizer, SingularSolution };
std::string to_string(ConjugatorStatus s);

struct ConjugatorResult {
  ConjugatorStatus status = ConjugatorStatus::NotSymmetric;
  int kernel_dim = 0;
  Mat<Cyclotomic> g;  // first non-zero entry (row-major) normalized to 1
  EVector e;
};
/// Solves tau(L) X = X L exactly.
ConjugatorResult conjugator(const PolyMat<Cyclotomic>& L);

struct ConjugatorFloatResult {
  ConjugatorStatus status = ConjugatorStatus::NotSymmetric;
  int kernel_dim = 0;
  Mat<Complex> g;
  EVector e;
  std::vector<double> singular_values;
};
/// Same system solved by SVD; singular values below gap * sigma_max count as zero.
ConjugatorFloatResult conjugator_float(const PolyMat<Complex>& L, double gap = 1e-8);

struct CentralizerData {
  std::vector<std::pair<int, int>> t0, tplus, tminus;  // 0-based pairs
  /// E_ij, (i, j) in T_0, (i, j) != (0, 0): a basis modulo the identity.
  std::vector<Mat<Cyclotomic>> lie_basis;
};
CentralizerData centralizer_data(const EVector& e, int p);

}  // namespace laxcyc
