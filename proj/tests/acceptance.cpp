// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "laxcyc/flows.hpp"
#include "laxcyc/poisson.hpp"
#include "laxcyc/random.hpp"
#include "laxcyc/reduction.hpp"
#include "laxcyc/spectral.hpp"
#include "laxcyc/symmetry.hpp"
#include "curve_oracle.hpp"

using namespace laxcyc;

namespace {

using PM = PolyMat<Cyclotomic>;
using Clock = std::chrono::steady_clock;

int failures = 0;

// Runs one criterion. `budget` is the wall-clock limit in seconds (0 = none);
// `body` returns true on success and may leave a note.
void criterion(int number, const char* title, double budget, const std::function<bool(std::string&)>& body) {
  std::string note;
  bool ok = false;
  const auto start = Clock::now();
  try {
    ok = body(note);
  } catch (const std::exception& ex) {
    note = std::string("exception: ") + ex.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (ok && budget > 0 && secs > budget) {
    ok = false;
    note = "over the " + std::to_string(static_cast<int>(budget)) + " s budget";
  }
  if (!ok) ++failures;
  std::printf("%s  %2d  %-40s %8.2f s%s%s\n", ok ? "PASS" : "FAIL", number, title, secs, note.empty() ? "" : "  ",
              note.c_str());
  std::fflush(stdout);
}

// Orbits of (Z/p)^p under permutations and simultaneous shifts.
std::size_t brute_force_orbits(int p) {
  std::set<std::vector<int>> seen;
  std::vector<int> e(p, 0);
  for (;;) {
    std::vector<int> best;
    for (int c = 0; c < p; ++c) {
      std::vector<int> s(p);
      for (int i = 0; i < p; ++i) s[i] = (e[i] + c) % p;
      std::sort(s.begin(), s.end());
      if (best.empty() || s < best) best = s;
    }
    seen.insert(best);
    int pos = 0;
    while (pos < p && ++e[pos] == p) e[pos++] = 0;
    if (pos == p) break;
  }
  return seen.size();
}

// Slots (i, j, k), k <= d, on which zeta^{k + e_j - e_i} = 1.
std::size_t count_fixed_slots(int p, int d, const EVector& e) {
  std::size_t n = 0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k <= d; ++k)
        if (((k + e[j] - e[i]) % p + p) % p == 0) ++n;
  return n;
}

PM standard_point() {
  PM L(2, 2);
  L.set(0, 1, 1, Cyclotomic(1));
  L.set(1, 0, 1, Cyclotomic(1));
  L.set(1, 1, 2, Cyclotomic(1));
  return L;
}

PM moving_point() {
  const char* entries[] = {"3", "1", "1", "-9/2", "-8/3", "-4", "6", "-4/3", "-6", "-7/3", "-2", "0"};
  PM L(2, 2);
  int n = 0;
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) L.set(i, j, k, Cyclotomic(parse_rational(entries[n++])));
  return L;
}

double drift(const PM& L, int i, int j, double h) {
  FlowConfig cfg;
  cfg.i = i;
  cfg.j = j;
  cfg.h = h;
  return integrate(to_complex(L), cfg).report.max_charpoly_drift;
}

// det(y0 I - L(x0)) straight from the evaluated matrix.
Cyclotomic spectral_value(const PM& L, const Cyclotomic& x0, const Cyclotomic& y0) {
  return determinant(y0 * Mat<Cyclotomic>::identity(L.p()) - L.eval(x0));
}

Mat<Cyclotomic> cycle_matrix(int p) {
  Mat<Cyclotomic> m(p, p);
  for (int i = 0; i < p; ++i) m(i, (i + 1) % p) = Cyclotomic(1);
  return m;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "E-counting", 1, [](std::string& note) {
    const std::size_t want[] = {2, 4, 26};
    const int ps[] = {2, 3, 5};
    for (int t = 0; t < 3; ++t) {
      const int p = ps[t];
      if (e_count_formula(p) != want[t] || enumerate_E(p).size() != want[t]) {
        note = "p=" + std::to_string(p);
        return false;
      }
    }
    for (int p : {2, 3})
      if (brute_force_orbits(p) != enumerate_E(p).size()) {
        note = "orbit count differs at p=" + std::to_string(p);
        return false;
      }
    return true;
  });

  criterion(2, "fixed-space dimensions", 1, [](std::string& note) {
    for (int p : {2, 3, 5})
      for (int d = 0; d <= 10; ++d) {
        const std::size_t z = fixed_basis(p, d, zero_e(p)).dimension();
        const std::size_t w = fixed_basis(p, d, omega(p)).dimension();
        if (z != static_cast<std::size_t>((d / p + 1) * p * p) || z != count_fixed_slots(p, d, zero_e(p)) ||
            w != static_cast<std::size_t>((d + 1) * p) || w != count_fixed_slots(p, d, omega(p))) {
          note = "p=" + std::to_string(p) + " d=" + std::to_string(d);
          return false;
        }
      }
    return true;
  });

  criterion(3, "Poisson axioms and compatibility", 60, [](std::string& note) {
    Rng rng(3);
    for (int p : {2, 3})
      for (int q = 0; q <= 4; ++q)
        for (int mu = 0; mu <= q + 1; ++mu) {
          LoopBracket table(VarSpace{p, q}, BracketSpec::single(mu));
          const std::string where = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " mu=" + std::to_string(mu);
          if (!jacobi_check(table, 200, rng)) {
            note = "Jacobi " + where;
            return false;
          }
          if (mu <= q && !compatibility_check(p, q, mu, mu + 1, 50, rng)) {
            note = "pencil " + where;
            return false;
          }
        }
    return true;
  });

  criterion(4, "generating identities", 30, [](std::string& note) {
    for (int p : {2, 3})
      for (int q = 0; q <= 3; ++q)
        for (int mu = 0; mu <= q + 1; ++mu)
          if (!generating_identity_check(p, q, BracketSpec::single(mu))) {
            note = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " mu=" + std::to_string(mu);
            return false;
          }
    for (int q = 0; q <= 3; ++q)
      for (int s = 0; s <= q + 1; ++s)
        if (!auxiliary_identity_check(q, s)) {
          note = "auxiliary q=" + std::to_string(q) + " s=" + std::to_string(s);
          return false;
        }
    for (int p : {2, 3, 5})
      for (int l = 1; l <= p; ++l) {
        if (!zeta_partial_fraction_check(p, l)) {
          note = "partial fractions p=" + std::to_string(p) + " l=" + std::to_string(l);
          return false;
        }
        // the same identity evaluated at rational t, in Q(zeta)
        for (int t0 : {2, -3, 5}) {
          const Cyclotomic t(t0);
          Cyclotomic lhs(0);
          for (int k = 1; k <= p; ++k) lhs += Cyclotomic::zeta_pow(p, static_cast<long>(k) * l) / (t - Cyclotomic::zeta_pow(p, k));
          const Cyclotomic rhs = Cyclotomic(p) * t.pow(l - 1) / (t.pow(p) - Cyclotomic(1));
          if (lhs != rhs) {
            note = "evaluated partial fractions p=" + std::to_string(p) + " l=" + std::to_string(l);
            return false;
          }
        }
      }
    return true;
  });

  criterion(5, "automorphism criterion", 0, [](std::string& note) {
    int degenerate = 0;
    for (int p : {2, 3})
      for (const EVector& e : {zero_e(p), omega(p)})
        for (int q = 0; q <= 4; ++q)
          for (int mu = 0; mu <= q + 1; ++mu) {
            // An identically zero bracket is preserved by every map; that
            // happens only for q = 0, mu = 0 and is checked as such.
            LoopBracket table(VarSpace{p, q}, BracketSpec::single(mu));
            bool vanishes = true;
            for (int a = 0; a < table.space().count() && vanishes; ++a)
              for (int b = 0; b < table.space().count() && vanishes; ++b) vanishes = table.coord(a, b).is_zero();
            degenerate += vanishes;
            if (is_poisson_automorphism(e, mu, p, q) != (vanishes || mu % p == 1)) {
              note = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " mu=" + std::to_string(mu);
              return false;
            }
          }
    note = std::to_string(degenerate) + " cases with a zero bracket (q=0, mu=0)";
    return true;
  });

  criterion(6, "involutivity and Hamiltonian fields", 120, [](std::string& note) {
    for (int q = 0; q <= 3; ++q)
      for (int mu = 0; mu <= q + 1; ++mu)
        if (!involutivity_check(2, q, mu)) {
          note = "involutivity q=" + std::to_string(q) + " mu=" + std::to_string(mu);
          return false;
        }
    Rng rng(6);
    for (int s = 0; s < 20; ++s) {
      const int p = s % 2 == 0 ? 2 : 3, q = 2;
      const PM L = random_polymat(rng, p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j <= (i + 1) * q + 1; ++j)
          for (int mu = 0; mu <= q + 1; ++mu)
            if (hamiltonian_vf(L, i, j, mu) != lax_rhs(L, i, j)) {
              note = "sample " + std::to_string(s) + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                     " mu=" + std::to_string(mu);
              return false;
            }
    }
    return true;
  });

  criterion(7, "Casimir ranges (p=2, q=2, mu=1)", 0, [](std::string& note) {
    const std::vector<int> got = casimir_indices(2, 2, 1, 1);
    if (got != std::vector<int>{0, 3, 4}) {
      for (int j : got) note += std::to_string(j) + " ";
      return false;
    }
    return true;
  });

  criterion(8, "reduced bracket formula", 120, [](std::string& note) {
    for (auto [p, q] : {std::pair{2, 4}, std::pair{3, 6}}) {
      const VarSpace s{p, q};
      const EVector e = omega(p);
      for (int top : {1, p + 1}) {
        ReducedBracket red(s, e, BracketSpec::single(top));
        ExtensionBracket ext(s, e, BracketSpec::single(top));
        for (int a = 0; a < s.count(); ++a) {
          if (!admissible_var(s, e, a)) continue;
          for (int b = 0; b < s.count(); ++b)
            if (admissible_var(s, e, b) && red.coord(a, b) != ext.coord(a, b)) {
              note = "p=" + std::to_string(p) + " phi=x^" + std::to_string(top) + " at " + s.name(a) + ", " + s.name(b);
              return false;
            }
        }
      }
    }
    return true;
  });

  criterion(9, "momentum map identities", 0, [](std::string& note) {
    Rng rng(9);
    for (int p : {2, 3})
      for (int dp : {1, 2}) {
        const EVector e = omega(p);
        const PhiSpec phi = PhiSpec::standard(dp);
        const int d = p * dp;
        const std::string where = " p=" + std::to_string(p) + " d'=" + std::to_string(dp);
        if (!lie_homo_check(p, e, phi, 20, rng)) {
          note = "Lie-homo" + where;
          return false;
        }
        if (!b_br_check(p, e, phi)) {
          note = "b-br" + where;
          return false;
        }
        for (int s = 0; s < 20; ++s)
          if (!infinitesimal_action_check(e, phi, random_extended_point(rng, p, d, e))) {
            note = "H-moment" + where;
            return false;
          }
        for (int i = 0; i < p; ++i)
          for (int m = 0; m <= i * dp + 2; ++m) {
            const CasimirKind want = m > i * dp    ? CasimirKind::ZeroField
                                     : m == i * dp ? CasimirKind::TangentToOrbits
                                                   : CasimirKind::NotCasimirRange;
            if (casimir_certificate(p, e, dp, i, m, 5, rng) != want) {
              note = "casimir_certificate i=" + std::to_string(i) + " m=" + std::to_string(m) + where;
              return false;
            }
          }
      }
    return true;
  });

  criterion(10, "RK4 conservation", 10, [](std::string& note) {
    const double a = drift(moving_point(), 1, 1, 1e-3), a2 = drift(moving_point(), 1, 1, 5e-4);
    const double c = drift(standard_point(), 1, 2, 1e-3);
    const double c0 = drift(standard_point(), 1, 2, 0.1), c1 = drift(standard_point(), 1, 2, 0.05);
    note = fmt("drift(1,1)=%.2e", a) + fmt(" drift(1,2)=%.2e", c) + fmt(" ratios %.1f", a / a2) +
           fmt(", %.1f", c0 / c1);
    return a <= 1e-8 && c <= 1e-8 && a >= 8 * a2 && c0 >= 8 * c1;
  });

  criterion(11, "fixed-locus tangency", 10, [](std::string& note) {
    FlowConfig cfg;
    cfg.i = 1;
    cfg.j = 2;
    cfg.e = omega(2);
    const double dev = integrate(to_complex(standard_point()), cfg).report.fixed_locus_deviation;
    note = fmt("deviation=%.2e", dev);
    if (dev > 1e-8) return false;
    Rng rng(11);
    for (int p : {2, 3})
      for (int s = 0; s < 10; ++s) {
        const PM B = random_fixed(rng, p, 2 * p, omega(p));
        for (int i = 0; i < p; ++i)
          for (int m = 0; m <= 2; ++m) {
            const PM v = reduced_lax_rhs(B, omega(p), i, m);
            for (int a = 0; a < p; ++a)
              for (int b = 0; b < p; ++b)
                for (int k = 0; k <= v.q(); ++k)
                  if (((k + b - a) % p + p) % p != 0 && !v.at(a, b, k).is_zero()) {
                    note += " exact field leaves the fixed space";
                    return false;
                  }
          }
      }
    return true;
  });

  criterion(12, "spectral quotient and diagram", 0, [](std::string& note) {
    Rng rng(12);
    for (int p : {2, 3}) {
      const auto E = enumerate_E(p);
      const Cyclotomic z = Cyclotomic::zeta(p);
      for (int s = 0; s < 50; ++s) {
        const EVector& e = E[s % E.size()];
        const PM L = random_fixed(rng, p, p * (1 + s % 2), e);
        const Curve P = char_poly(L);
        for (int x0 : {1, 2, -3})
          for (int y0 : {0, 1, -2})
            if (spectral_value(L, z * Cyclotomic(x0), Cyclotomic(y0)) != spectral_value(L, Cyclotomic(x0), Cyclotomic(y0))) {
              note = "det(y - L(zeta x)) differs, p=" + std::to_string(p);
              return false;
            }
        const DiagramResult r = alpha_and_chi(L, e);
        if (!r.commutes) {
          note = "diagram, p=" + std::to_string(p) + " sample " + std::to_string(s);
          return false;
        }
        for (int i = 0; i <= P.deg_x(); ++i)
          for (int j = 0; j <= P.deg_y(); ++j) {
            const Cyclotomic want = i % p == 0 ? r.chi.coeff(i / p, j) : Cyclotomic(0);
            if (P.coeff(i, j) != want) {
              note = "chi(x^p, y) != char_poly, p=" + std::to_string(p);
              return false;
            }
          }
      }
    }
    return true;
  });

  criterion(13, "genus and Riemann-Hurwitz", 1, [](std::string& note) {
    for (int p : {2, 3, 5, 7})
      for (int dp = 1; dp <= 4; ++dp) {
        const long gP = static_cast<long>(p - 1) * (p * p * dp - 2) / 2;
        const long gQ = static_cast<long>(p - 1) * (p * dp - 2) / 2;
        const bool rh = 2 * gP - 2 == p * (2 * gQ - 2) + 2 * p * (p - 1);
        if (genus(p, p * dp).genus != gP || genus(p, dp).genus != gQ || !rh || !rh_consistency(p, dp)) {
          note = "p=" + std::to_string(p) + " d'=" + std::to_string(dp);
          return false;
        }
      }
    return true;
  });

  criterion(14, "Hamiltonian independence", 0, [](std::string& note) {
    Rng rng(14);
    for (auto [dp, want] : {std::pair{1, 5}, std::pair{2, 8}}) {
      if (s_prime(2, dp) != want) return false;
      for (int s = 0; s < 10; ++s) {
        const int r = hamiltonian_rank(omega(2), 2, dp, random_generic_fixed(rng, 2, 2 * dp, omega(2)));
        if (r != want) {
          note = "d'=" + std::to_string(dp) + " rank " + std::to_string(r);
          return false;
        }
      }
    }
    return true;
  });

  criterion(15, "conjugator and classification", 0, [](std::string& note) {
    Rng rng(15);
    for (int p : {2, 3})
      for (const EVector& e : {omega(p), zero_e(p)})
        for (int s = 0; s < 3; ++s) {
          const PM B = random_fixed(rng, p, 2 * p, e);
          const Mat<Cyclotomic> h = random_invertible(rng, p, [](int, int) { return true; });
          const PM L = (PM(h) * B * PM(inverse(h))).with_bound(2 * p);
          const ConjugatorResult r = conjugator(L);
          if (r.status != ConjugatorStatus::Found || r.kernel_dim != 1 || tau(L) * PM(r.g) != PM(r.g) * L ||
              r.e != canonicalize(e, p)) {
            note = "conjugator p=" + std::to_string(p);
            return false;
          }
        }
    for (int p : {2, 3, 5}) {
      for (const auto& e : enumerate_E(p)) {
        const Mat<Cyclotomic> h = random_invertible(rng, p, [](int, int) { return true; });
        const Mat<Cyclotomic> D = Cyclotomic(rng.nonzero_rational()) * (h * delta_matrix(e, p) * inverse(h));
        if (classify_torsion(D, p) != canonicalize(e, p)) {
          note = "classify_torsion p=" + std::to_string(p);
          return false;
        }
      }
      if (classify_torsion(cycle_matrix(p), p) != canonicalize(omega(p), p)) {
        note = "p-cycle p=" + std::to_string(p);
        return false;
      }
    }
    return true;
  });

  criterion(16, "irreducibility corpus", 30, [](std::string& note) {
    int reducible = 0, irreducible = 0, exact = 0;
    for (const auto& c : irreducibility_corpus()) {
      CurveTruth truth = curve_oracle(c.curve);
      if (!c.factors.empty()) {
        Curve prod = c.factors.front();
        for (std::size_t k = 1; k < c.factors.size(); ++k) prod = prod * c.factors[k];
        if (prod != c.curve) {
          note = c.label + ": factors do not multiply out";
          return false;
        }
        truth = CurveTruth::Reducible;
      }
      if (truth == CurveTruth::Undecided) {
        note = c.label + ": no ground truth";
        return false;
      }
      const CurveCert cert = irreducible_cert(c.curve);
      const bool red = truth == CurveTruth::Reducible;
      (red ? reducible : irreducible)++;
      if (cert.exact_verdict != Verdict::Unknown) ++exact;
      const bool ok = red ? cert.monodromy_verdict == Verdict::Reducible && cert.exact_verdict != Verdict::IrreducibleExact
                          : cert.monodromy_verdict == Verdict::IrreducibleMonodromy && cert.exact_verdict != Verdict::Reducible;
      if (!ok) {
        note = c.label + ": " + to_string(cert.monodromy_verdict) + " / " + to_string(cert.exact_verdict);
        return false;
      }
    }
    note = std::to_string(reducible) + " reducible, " + std::to_string(irreducible) + " irreducible, " +
           std::to_string(exact) + " exact";
    return reducible >= 3 && irreducible >= 5 && exact >= 2;
  });

  std::printf("%s: %d of 16 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
