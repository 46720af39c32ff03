#include "laxcyc/flows.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "laxcyc/multipoly.hpp"
#include "laxcyc/poisson.hpp"

namespace laxcyc {

PolyMat<Cyclotomic> reduced_lax_rhs(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m) {
  if (!is_fixed(B, e)) throw std::invalid_argument("B is not in the fixed locus of sigma_e");
  if (m < 0) throw std::invalid_argument("reduced flow index must be non-negative");
  PolyMat<Cyclotomic> r = lax_rhs(B, i, B.p() * m);
  if (!is_fixed(r, e)) throw std::logic_error("reduced Lax field left the fixed locus");
  return r;
}

int charpoly_invariant_count(int p, int q) {
  int n = 0;
  for (int b = 0; b < p; ++b) n += (p - b) * q + 1;
  return n;
}

std::vector<std::string> invariant_names(int p, int q) {
  std::vector<std::string> names;
  for (int b = 0; b < p; ++b)
    for (int a = 0; a <= (p - b) * q; ++a) names.push_back("c[x^" + std::to_string(a) + " y^" + std::to_string(b) + "]");
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= (i + 1) * q; ++j) names.push_back("H_" + std::to_string(i) + "," + std::to_string(j));
  return names;
}

std::vector<Complex> invariant_values(const PolyMat<Complex>& L) {
  const int p = L.p(), q = L.q();
  std::vector<Complex> vals;
  const BivarPoly<Complex> cp = char_poly(L);
  for (int b = 0; b < p; ++b)
    for (int a = 0; a <= (p - b) * q; ++a) vals.push_back(cp.coeff(a, b));
  for (int i = 0; i < p; ++i) {
    const Poly<Complex> tr = L.pow(static_cast<unsigned>(i + 1)).trace();
    for (int j = 0; j <= (i + 1) * q; ++j) vals.push_back(tr.coeff(j) / static_cast<double>(i + 1));
  }
  return vals;
}

PolyMat<Complex> rk4_step(const PolyMat<Complex>& L, int i, int j, double h) {
  const Complex hc(h), half(h / 2.0);
  const PolyMat<Complex> k1 = lax_rhs(L, i, j);
  const PolyMat<Complex> k2 = lax_rhs(L + half * k1, i, j);
  const PolyMat<Complex> k3 = lax_rhs(L + half * k2, i, j);
  const PolyMat<Complex> k4 = lax_rhs(L + hc * k3, i, j);
  return L + Complex(h / 6.0) * (k1 + Complex(2.0) * k2 + Complex(2.0) * k3 + k4);
}

FlowResult integrate(const PolyMat<Complex>& L0, const FlowConfig& cfg) {
  if (!(cfg.h > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (cfg.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const int p = L0.p(), q = L0.q();
  const int steps = static_cast<int>(std::ceil(cfg.t_end / cfg.h - 1e-9));
  const double h = steps > 0 ? cfg.t_end / steps : cfg.h;

  FlowResult res;
  res.report.names = invariant_names(p, q);
  res.report.max_drift.assign(res.report.names.size(), 0.0);
  res.report.steps = steps;
  res.report.h = h;
  const int ncp = charpoly_invariant_count(p, q);

  auto deviation = [&](const PolyMat<Complex>& L) {
    double dev = 0.0;
    if (!cfg.e) return dev;
    for (int k = 0; k <= q; ++k)
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
          if (!admissible(*cfg.e, p, a, b, k)) dev = std::max(dev, std::abs(L.at(a, b, k)));
    return dev;
  };

  const std::vector<Complex> v0 = invariant_values(L0);
  res.times.push_back(0.0);
  res.samples.push_back(v0);
  res.report.fixed_locus_deviation = deviation(L0);

  PolyMat<Complex> L = L0;
  for (int s = 1; s <= steps; ++s) {
    L = rk4_step(L, cfg.i, cfg.j, h);
    const std::vector<Complex> v = invariant_values(L);
    for (std::size_t n = 0; n < v.size(); ++n) {
      const double d = std::abs(v[n] - v0[n]) / std::max(std::abs(v0[n]), 1.0);
      if (!std::isfinite(d) || d > cfg.abort_drift) {
        std::ostringstream os;
        os << "invariant " << res.report.names[n] << " drifted by " << d << " at t = " << s * h
           << " (cap " << cfg.abort_drift << "); reduce the step";
        throw FlowInstability(os.str());
      }
      res.report.max_drift[n] = std::max(res.report.max_drift[n], d);
    }
    res.report.fixed_locus_deviation = std::max(res.report.fixed_locus_deviation, deviation(L));
    if (s % cfg.sample_every == 0 || s == steps) {
      res.times.push_back(s * h);
      res.samples.push_back(v);
    }
  }
  for (std::size_t n = 0; n < res.report.max_drift.size(); ++n) {
    double& slot = static_cast<int>(n) < ncp ? res.report.max_charpoly_drift : res.report.max_hamiltonian_drift;
    slot = std::max(slot, res.report.max_drift[n]);
  }
  res.final_point = L;
  res.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

bool vf_consistency_check(const PolyMat<Cyclotomic>& L, int i, int j, int mu) {
  return hamiltonian_vf(L, i, j, mu) == lax_rhs(L, i, j);
}

bool reduced_vf_consistency_check(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m, int n) {
  return reduced_hamiltonian_vf(B, e, i, m, n) == reduced_lax_rhs(B, e, i, m);
}

bool isospectral_check(int p, int q, int i, int j) {
  const VarSpace s{p, q};
  const PolyMat<CoordFunction> L = symbolic_matrix(s);
  const PolyMat<CoordFunction> rhs = lax_rhs(L, i, j);
  const BivarPoly<CoordFunction> cp = char_poly(L);
  for (int b = 0; b <= cp.deg_y(); ++b) {
    const Poly<CoordFunction> yc = cp.ycoeff(b);
    for (int a = 0; a <= yc.degree(); ++a) {
      const CoordFunction& c = yc.coeffs()[a];
      CoordFunction dot;
      for (int v : c.variables()) {
        const CoordFunction& r = rhs.at(s.row(v), s.col(v), s.power(v));
        if (!r.is_zero()) dot += c.derivative(v) * r;
      }
      if (!dot.is_zero()) return false;
    }
  }
  return true;
}

PolyMat<Cyclotomic> vector_field_bracket(const PolyMat<Cyclotomic>& L, std::pair<int, int> a, std::pair<int, int> b) {
  using E = Poly<Cyclotomic>;
  auto lift = [](const PolyMat<Cyclotomic>& M) { return M.map([](const Cyclotomic& c) { return E(c); }); };
  auto first_order = [](const PolyMat<E>& M) { return M.map([](const E& c) { return c.coeff(1); }); };
  const E eps = E::x();
  const PolyMat<Cyclotomic> Xa = lax_rhs(L, a.first, a.second);
  const PolyMat<Cyclotomic> Xb = lax_rhs(L, b.first, b.second);
  // D X_b [X_a] - D X_a [X_b]
  const PolyMat<E> along_a = lift(L) + eps * lift(Xa);
  const PolyMat<E> along_b = lift(L) + eps * lift(Xb);
  return first_order(lax_rhs(along_a, b.first, b.second)) - first_order(lax_rhs(along_b, a.first, a.second));
}

}  // namespace laxcyc
