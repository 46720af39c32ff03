#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laxcyc/polymat.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc {

class DegreeOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FlowInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// [L(x), (L(x)^i / x^j)_+], returned with the degree bound of L.
/// Throws DegreeOverflow if the commutator does not fit (never expected).
template <class T>
PolyMat<T> lax_rhs(const PolyMat<T>& L, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("lax_rhs needs i >= 0 and j >= 0");
  const PolyMat<T> trunc = truncate_div(L.pow(static_cast<unsigned>(i)), j);
  const PolyMat<T> c = commutator(L, trunc);
  if (c.effective_degree() > L.q())
    throw DegreeOverflow("Lax vector field raised the degree to " + std::to_string(c.effective_degree()));
  return c.with_bound(L.q());
}

/// Lax vector field of index (i, p m) on the fixed locus of sigma_e; checks
/// that B and the result are fixed.
PolyMat<Cyclotomic> reduced_lax_rhs(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m);

struct FlowConfig {
  int i = 1;
  int j = 1;
  double t_end = 1.0;
  double h = 1e-3;
  /// Record a trajectory sample every this many steps (the last step is always recorded).
  int sample_every = 1;
  /// Integration aborts when any invariant drifts beyond this.
  double abort_drift = 1e-2;
  /// If set, the deviation of non-admissible coordinates is monitored.
  std::optional<EVector> e;
};

struct InvariantReport {
  std::vector<std::string> names;
  /// max_t |v(t) - v(0)| / max(|v(0)|, 1), per invariant.
  std::vector<double> max_drift;
  double max_charpoly_drift = 0.0;
  double max_hamiltonian_drift = 0.0;
  /// Largest modulus of a non-admissible coordinate (0 without e).
  double fixed_locus_deviation = 0.0;
  int steps = 0;
  double h = 0.0;
  double wall_seconds = 0.0;
};

struct FlowResult {
  std::vector<double> times;
  std::vector<std::vector<Complex>> samples;  // invariant values per sample
  PolyMat<Complex> final_point;
  InvariantReport report;
};

/// Names and values of the monitored invariants: char-poly coefficients
/// c[a][b] (x^a y^b, b < p) followed by H_{i,j}, 0 <= i < p, 0 <= j <= (i+1)q.
std::vector<std::string> invariant_names(int p, int q);
std::vector<Complex> invariant_values(const PolyMat<Complex>& L);
/// Number of leading entries of invariant_values that are char-poly coefficients.
int charpoly_invariant_count(int p, int q);

PolyMat<Complex> rk4_step(const PolyMat<Complex>& L, int i, int j, double h);
/// Classical fixed-step RK4. Throws FlowInstability when drift exceeds cfg.abort_drift.
FlowResult integrate(const PolyMat<Complex>& L0, const FlowConfig& cfg);

/// hamiltonian_vf(L, i, j, mu) == lax_rhs(L, i, j), exactly.
bool vf_consistency_check(const PolyMat<Cyclotomic>& L, int i, int j, int mu);
/// Reduced Hamiltonian field of H_{i, p(m+n)} for {,}^red_{1+pn} == reduced_lax_rhs(B, e, i, m).
bool reduced_vf_consistency_check(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m, int n);

/// d/dt of every char-poly coefficient along the (i, j) Lax field vanishes
/// identically (chain rule on symbolic coordinates).
bool isospectral_check(int p, int q, int i, int j);

/// Lie bracket [X_a, X_b](L) of two Lax vector fields, with exact directional
/// derivatives (polynomials in a formal parameter).
PolyMat<Cyclotomic> vector_field_bracket(const PolyMat<Cyclotomic>& L, std::pair<int, int> a, std::pair<int, int> b);

}  // namespace laxcyc
