#include "laxcyc/reduction.hpp"

#include <stdexcept>

#include "laxcyc/flows.hpp"

namespace laxcyc {

namespace {

bool in_t0(const EVector& e, int i, int j) { return e[i] == e[j]; }

void require_t0(const EVector& e, int i, int j) {
  if (!in_t0(e, i, j)) throw std::invalid_argument("index pair is not in T_0");
}

std::string var_label(int i, int j, int k) {
  return "b^" + std::to_string(k) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace

PhiSpec::PhiSpec(int dp, std::vector<Rational> c) : dprime(dp), ctilde(std::move(c)) {
  if (dprime < 1) throw std::invalid_argument("d' must be >= 1");
  if (static_cast<int>(ctilde.size()) != dprime + 2) throw std::invalid_argument("phit needs d' + 2 coefficients");
  if (sgn(ctilde.back()) == 0) throw std::invalid_argument("leading coefficient c'_{d'+1} must be non-zero");
}

PhiSpec PhiSpec::standard(int dprime) {
  std::vector<Rational> c(dprime + 2, Rational(0));
  c.back() = 1;
  return PhiSpec(dprime, std::move(c));
}

BracketSpec PhiSpec::phi(int p) const {
  std::vector<Rational> w(p * (dprime + 1) + 2, Rational(0));
  for (int k = 0; k <= dprime + 1; ++k) w[p * k + 1] = ctilde[k];
  return BracketSpec::phi(std::move(w));
}

PolyMat<Cyclotomic> embed_eta(const PolyMat<Cyclotomic>& B, int d, const EVector& e) {
  if (B.effective_degree() > d) throw std::invalid_argument("B exceeds degree d");
  if (!is_fixed(B, e)) throw std::invalid_argument("B is not fixed under sigma_e");
  return B.with_bound(d + B.p());
}

std::vector<std::string> eta_image_violations(const PolyMat<Cyclotomic>& B, int d, const EVector& e) {
  const int p = B.p();
  if (B.q() != d + p) throw std::invalid_argument("extended points have degree bound d + p");
  std::vector<std::string> bad;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (in_t0(e, i, j)) {
        if (!B.at(i, j, d + p).is_zero()) bad.push_back(var_label(i, j, d + p));
      } else {
        for (int k = 1; k <= p - 1; ++k)
          if (!B.at(i, j, d + p - k).is_zero()) bad.push_back(var_label(i, j, d + p - k));
      }
    }
  return bad;
}

bool is_extended_point(const PolyMat<Cyclotomic>& B, int d, const EVector& e) {
  return B.q() == d + B.p() && is_fixed(B, e) && B.coeff(d + B.p()).trace().is_zero();
}

PolyMat<Cyclotomic> random_extended_point(Rng& rng, int p, int d, const EVector& e) {
  PolyMat<Cyclotomic> B = random_fixed(rng, p, d + p, e);
  const Cyclotomic tr = B.coeff(d + p).trace();
  B.set(p - 1, p - 1, d + p, B.at(p - 1, p - 1, d + p) - tr);
  return B;
}

CoordFunction comoment(int p, const EVector& e, int i, int j, const PhiSpec& phi) {
  require_t0(e, i, j);
  const int d = p * phi.dprime;
  const VarSpace s{p, d + p};
  return scale(CoordFunction::var(s.id(j, i, d + p)), 1 / phi.top());
}

bool lie_homo_check(int p, const EVector& e, const PhiSpec& phi, int samples, Rng& rng) {
  const int d = p * phi.dprime;
  const VarSpace s{p, d + p};
  ReducedBracket table(s, e, phi.phi(p));
  const CentralizerData cd = centralizer_data(e, p);
  std::vector<PolyMat<Cyclotomic>> points;
  for (int n = 0; n < samples; ++n) points.push_back(random_extended_point(rng, p, d, e));
  for (const auto& [i, j] : cd.t0)
    for (const auto& [k, l] : cd.t0) {
      const CoordFunction lhs = bracket(comoment(p, e, i, j, phi), comoment(p, e, k, l, phi), table);
      // [E_ij, E_kl] = delta_jk E_il - delta_il E_kj
      CoordFunction rhs;
      if (j == k) rhs += comoment(p, e, i, l, phi);
      if (i == l) rhs -= comoment(p, e, k, j, phi);
      for (const auto& B : points)
        if (evaluate(lhs, B) != evaluate(rhs, B)) return false;
    }
  return true;
}

bool infinitesimal_action_check(const EVector& e, const PhiSpec& phi, const PolyMat<Cyclotomic>& B) {
  const int p = B.p();
  const int d = p * phi.dprime;
  if (!is_extended_point(B, d, e)) throw std::invalid_argument("B is not an extended point");
  const VarSpace s{p, d + p};
  ReducedBracket table(s, e, phi.phi(p));
  const CentralizerData cd = centralizer_data(e, p);

  auto bracket_side = [&](const CoordFunction& mu_e) {
    PolyMat<Cyclotomic> out(p, d + p);
    for (int v = 0; v < s.count(); ++v) {
      if (!admissible_var(s, e, v)) continue;
      out.set(s.row(v), s.col(v), s.power(v), -evaluate(bracket(CoordFunction::var(v), mu_e, table), B));
    }
    return out;
  };

  for (const auto& [n, m] : cd.t0) {
    const PolyMat<Cyclotomic> lhs = commutator(B, PolyMat<Cyclotomic>(Mat<Cyclotomic>::unit(p, n, m)));
    if (lhs != bracket_side(comoment(p, e, n, m, phi))) return false;
  }
  CoordFunction mu_identity;
  for (int i = 0; i < p; ++i) mu_identity += comoment(p, e, i, i, phi);
  return bracket_side(mu_identity).is_zero() &&
         commutator(B, PolyMat<Cyclotomic>::identity(p)).is_zero() && evaluate(mu_identity, B).is_zero();
}

bool b_br_check(int p, const EVector& e, const PhiSpec& phi) {
  const int d = p * phi.dprime;
  const VarSpace s{p, d + p};
  ReducedBracket table(s, e, phi.phi(p));
  const CentralizerData cd = centralizer_data(e, p);
  auto b = [&](int i, int j, int k) {
    return admissible(e, p, i, j, k) ? CoordFunction::var(s.id(i, j, k)) : CoordFunction();
  };
  for (const auto& [m, n] : cd.t0)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        for (int k = 0; k <= d + p; ++k) {
          const CoordFunction lhs = scale(bracket(b(i, j, k), b(m, n, d + p), table), 1 / phi.top());
          CoordFunction rhs;
          if (j == m) rhs -= b(i, n, k);
          if (i == n) rhs += b(m, j, k);
          if (lhs != rhs) return false;
        }
  return true;
}

std::string to_string(CasimirKind k) {
  switch (k) {
    case CasimirKind::ZeroField:
      return "ZeroField";
    case CasimirKind::TangentToOrbits:
      return "TangentToOrbits";
    case CasimirKind::NotCasimirRange:
      return "NotCasimirRange";
  }
  return "?";
}

CasimirKind casimir_certificate(int p, const EVector& e, int dprime, int i, int m, int samples, Rng& rng) {
  if (i < 0 || m < 0) throw std::invalid_argument("casimir certificate needs i, m >= 0");
  const int d = p * dprime;
  bool all_zero = true, all_tangent = true;
  for (int n = 0; n < samples; ++n) {
    const PolyMat<Cyclotomic> B = embed_eta(random_fixed(rng, p, d, e), d, e);
    const PolyMat<Cyclotomic> t = truncate_div(B.pow(static_cast<unsigned>(i)), p * m);
    if (t.is_zero()) continue;
    all_zero = false;
    if (t.effective_degree() > 0) {
      all_tangent = false;
      break;
    }
    for (int a = 0; a < p && all_tangent; ++a)
      for (int c = 0; c < p && all_tangent; ++c)
        if (e[a] != e[c] && !t.at(a, c, 0).is_zero()) all_tangent = false;
    if (!all_tangent) break;
  }
  if (all_zero) return CasimirKind::ZeroField;
  return all_tangent ? CasimirKind::TangentToOrbits : CasimirKind::NotCasimirRange;
}

bool g_invariance_check(int p, const EVector& e, int dprime, int i, int j, int samples, Rng& rng) {
  if (j % p != 0) throw std::invalid_argument("j must be a multiple of p");
  const int d = p * dprime;
  std::vector<Mat<Cyclotomic>> group{Mat<Cyclotomic>::identity(p)};
  for (int n = 0; n < samples; ++n) group.push_back(random_invertible(rng, p, [&](int a, int b) { return e[a] == e[b]; }));
  if (e == omega(p)) {
    for (int k = 0; k < p; ++k)
      for (int n = 0; n < samples; ++n)
        group.push_back(random_invertible(rng, p, [&](int a, int b) { return ((a - b - k) % p + p) % p == 0; }));
  }
  for (int n = 0; n < samples; ++n) {
    const PolyMat<Cyclotomic> B = random_fixed(rng, p, d, e);
    const Cyclotomic h = hamiltonian(B, i, j);
    for (const auto& g : group) {
      const PolyMat<Cyclotomic> conj = PolyMat<Cyclotomic>(g) * B * PolyMat<Cyclotomic>(inverse(g));
      const PolyMat<Cyclotomic> c = conj.with_bound(d);
      if (!is_fixed(c, e)) return false;
      if (hamiltonian(c, i, j) != h) return false;
    }
  }
  return true;
}

bool eta_tangency_check(const PolyMat<Cyclotomic>& B_ext, int d, const EVector& e, int i, int m) {
  if (!is_in_eta_image(B_ext, d, e)) throw std::invalid_argument("point is not in the image of eta");
  return is_in_eta_image(reduced_lax_rhs(B_ext, e, i, m), d, e);
}

}  // namespace laxcyc
