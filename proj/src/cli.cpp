#include "laxcyc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "laxcyc/flows.hpp"
#include "laxcyc/poisson.hpp"
#include "laxcyc/random.hpp"
#include "laxcyc/reduction.hpp"
#include "laxcyc/spectral.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc::cli {

using io::json;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

json SuiteConfig::to_json() const {
  json j{{"suite", suite}, {"p", p},           {"q", q},
         {"dprime", dprime}, {"e", e},         {"seed", seed},
         {"samples", samples}, {"triples", triples}, {"tolerance", tolerance}};
  if (!phi.empty()) j["phi"] = phi;
  return j;
}

Outcome Report::overall() const {
  bool unknown = false;
  for (const auto& c : checks) {
    if (c.verdict == Outcome::Fail) return Outcome::Fail;
    if (c.verdict == Outcome::Unknown) unknown = true;
  }
  return unknown ? Outcome::Unknown : Outcome::Pass;
}

json Report::to_json(bool with_timings) const {
  json cs = json::array();
  json timings = json::object();
  int pass = 0, fail = 0, unknown = 0;
  for (const auto& c : checks) {
    json jc{{"name", c.name}, {"verdict", cli::to_string(c.verdict)}, {"mode", c.mode}, {"input", c.input}};
    jc["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    if (!c.detail.is_null()) jc["detail"] = c.detail;
    cs.push_back(std::move(jc));
    timings[c.name] = c.seconds;
    (c.verdict == Outcome::Pass ? pass : c.verdict == Outcome::Fail ? fail : unknown)++;
  }
  json j{{"schema", kReportSchema},
         {"suite", suite},
         {"provenance", {{"seed", seed}, {"library_version", kVersion}, {"mode", mode}}},
         {"config", config},
         {"checks", std::move(cs)},
         {"summary", {{"pass", pass}, {"fail", fail}, {"unknown", unknown}, {"verdict", cli::to_string(overall())}}}};
  if (!data.is_null()) j["data"] = data;
  if (with_timings) j["timings"] = std::move(timings);
  return j;
}

void Report::print_summary(std::ostream& os) const {
  for (const auto& c : checks) {
    os << std::left << std::setw(8) << cli::to_string(c.verdict) << c.name;
    if (c.tolerance) os << "  (tol " << *c.tolerance << ")";
    os << '\n';
  }
  os << suite << ": " << cli::to_string(overall()) << " (seed " << seed << ")\n";
}

EVector parse_e(const std::string& selector, int p) {
  if (selector == "omega") return omega(p);
  if (selector == "zero") return zero_e(p);
  EVector e;
  std::stringstream ss(selector);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      e.push_back(v);
    } catch (const std::exception&) {
      throw io::InputError("bad e selector '" + selector + "': expected omega, zero or integers");
    }
  }
  if (static_cast<int>(e.size()) != p)
    throw io::InputError("e selector '" + selector + "' has " + std::to_string(e.size()) + " entries, expected p = " +
                         std::to_string(p));
  return reduce_e(e, p);
}

namespace {

using Clock = std::chrono::steady_clock;

class SuiteBuilder {
 public:
  SuiteBuilder(Report& report, std::uint64_t seed) : report_(report), seed_(seed) {}

  // f(Rng&, json& detail) returns bool or Outcome; each check gets its own
  // derived seed so it can be replayed in isolation.
  template <class F>
  void add(std::string name, std::string mode, json input, std::optional<double> tol, F&& f) {
    Check c;
    c.name = std::move(name);
    c.mode = std::move(mode);
    c.tolerance = tol;
    const std::uint64_t s = seed_ * 1000003ULL + report_.checks.size();
    input["seed"] = s;
    c.input = std::move(input);
    Rng rng(s);
    const auto t0 = Clock::now();
    // Bad parameters stay input errors; anything else the library throws
    // is this check failing, recorded with the message.
    try {
      const auto res = f(rng, c.detail);
      if constexpr (std::is_same_v<std::decay_t<decltype(res)>, bool>)
        c.verdict = res ? Outcome::Pass : Outcome::Fail;
      else
        c.verdict = res;
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& ex) {
      c.verdict = Outcome::Fail;
      c.detail["exception"] = ex.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(c));
  }

 private:
  Report& report_;
  std::uint64_t seed_;
};

PolyMat<Cyclotomic> standard_point() {
  PolyMat<Cyclotomic> L(2, 2);
  L.set(0, 1, 1, Cyclotomic(1));
  L.set(1, 0, 1, Cyclotomic(1));
  L.set(1, 1, 2, Cyclotomic(1));
  return L;
}

// Rational point of M_{2,2} on which the (1,1) flow moves and stays bounded for t in [0, 1].
PolyMat<Cyclotomic> moving_point() {
  const char* entries[] = {"3", "1", "1", "-9/2", "-8/3", "-4", "6", "-4/3", "-6", "-7/3", "-2", "0"};
  PolyMat<Cyclotomic> L(2, 2);
  int n = 0;
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) L.set(i, j, k, Cyclotomic(parse_rational(entries[n++])));
  return L;
}

double flow_drift(const PolyMat<Cyclotomic>& L, int i, int j, double h) {
  FlowConfig cfg;
  cfg.i = i;
  cfg.j = j;
  cfg.h = h;
  cfg.t_end = 1.0;
  return integrate(to_complex(L), cfg).report.max_charpoly_drift;
}

PhiSpec phi_of(const SuiteConfig& cfg) {
  if (cfg.phi.empty()) return PhiSpec::standard(cfg.dprime);
  std::vector<Rational> c;
  for (const auto& s : cfg.phi) c.push_back(parse_rational(s));
  return PhiSpec(cfg.dprime, std::move(c));
}

void symmetry_suite(const SuiteConfig& cfg, SuiteBuilder& b) {
  const int p = cfg.p;
  b.add("e_count", "exact", {{"p", p}}, std::nullopt, [&](Rng&, json& d) {
    const auto E = enumerate_E(p);
    d["count"] = E.size();
    d["formula"] = e_count_formula(p);
    d["classes"] = E;
    return E.size() == e_count_formula(p);
  });
  b.add("fixed_dimensions", "exact", {{"p", p}, {"d_max", 10}}, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (int deg = 0; deg <= 10; ++deg) {
      const std::size_t z = fixed_basis(p, deg, zero_e(p)).dimension();
      const std::size_t w = fixed_basis(p, deg, omega(p)).dimension();
      if (z != static_cast<std::size_t>((deg / p + 1) * p * p)) bad.push_back({{"d", deg}, {"e", "zero"}, {"dim", z}});
      if (w != static_cast<std::size_t>((deg + 1) * p)) bad.push_back({{"d", deg}, {"e", "omega"}, {"dim", w}});
    }
    if (!bad.empty()) d["mismatches"] = bad;
    return bad.empty();
  });
  b.add("torsion_classification", "mixed", {{"p", p}, {"samples", cfg.samples}}, 1e-8, [&](Rng& rng, json& d) {
    for (const auto& e : enumerate_E(p))
      for (int s = 0; s < cfg.samples; ++s) {
        const Mat<Cyclotomic> h = random_invertible(rng, p, [](int, int) { return true; });
        const Mat<Cyclotomic> m = Cyclotomic(rng.nonzero_rational()) * (h * delta_matrix(e, p) * inverse(h));
        const EVector want = canonicalize(e, p);
        const EVector exact = classify_torsion(m, p);
        const EVector flt = classify_torsion_float(m.map([](const Cyclotomic& c) { return c.embed(); }), p);
        if (exact != want || flt != want) {
          d = {{"e", want}, {"exact", exact}, {"float", flt}, {"matrix", io::to_json(m)}};
          return false;
        }
      }
    return true;
  });
  b.add("conjugator", "exact", {{"p", p}, {"q", 2 * p}, {"samples", cfg.samples}}, std::nullopt,
        [&](Rng& rng, json& d) {
          for (const auto& e : {omega(p), zero_e(p)})
            for (int s = 0; s < cfg.samples; ++s) {
              const PolyMat<Cyclotomic> B = random_generic_fixed(rng, p, 2 * p, e);
              const Mat<Cyclotomic> h = random_invertible(rng, p, [](int, int) { return true; });
              const PolyMat<Cyclotomic> L = PolyMat<Cyclotomic>(h) * B * PolyMat<Cyclotomic>(inverse(h));
              const PolyMat<Cyclotomic> Lq = L.with_bound(2 * p);
              const ConjugatorResult r = conjugator(Lq);
              const bool ok = r.status == ConjugatorStatus::Found && r.kernel_dim == 1 &&
                              tau(Lq) * PolyMat<Cyclotomic>(r.g) == PolyMat<Cyclotomic>(r.g) * Lq &&
                              r.e == canonicalize(e, p);
              if (!ok) {
                d = {{"status", to_string(r.status)}, {"kernel_dim", r.kernel_dim}, {"matrix", io::to_json(Lq)}};
                return false;
              }
            }
          return true;
        });
}

void poisson_suite(const SuiteConfig& cfg, SuiteBuilder& b) {
  const int p = cfg.p, q = cfg.q;
  const json pq{{"p", p}, {"q", q}};
  for (int mu = 0; mu <= q + 1; ++mu) {
    json in = pq;
    in["mu"] = mu;
    in["triples"] = cfg.triples;
    b.add("jacobi mu=" + std::to_string(mu), "exact", in, std::nullopt, [&](Rng& rng, json&) {
      LoopBracket table(VarSpace{p, q}, BracketSpec::single(mu));
      return jacobi_check(table, cfg.triples, rng);
    });
  }
  for (int mu = 0; mu <= q; ++mu) {
    json in = pq;
    in["mu"] = {mu, mu + 1};
    in["triples"] = cfg.triples;
    b.add("compatibility mu=" + std::to_string(mu) + "," + std::to_string(mu + 1), "exact", in, std::nullopt,
          [&](Rng& rng, json&) { return compatibility_check(p, q, mu, mu + 1, cfg.triples, rng); });
  }
  b.add("generating_identity", "exact", pq, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (int mu = 0; mu <= q + 1; ++mu)
      if (!generating_identity_check(p, q, BracketSpec::single(mu))) bad.push_back(mu);
    for (int s = 0; s <= q + 1; ++s)
      if (!auxiliary_identity_check(q, s)) bad.push_back("auxiliary s=" + std::to_string(s));
    for (int l = 1; l <= p; ++l)
      if (!zeta_partial_fraction_check(p, l)) bad.push_back("partial fraction l=" + std::to_string(l));
    if (!bad.empty()) d["failing"] = bad;
    return bad.empty();
  });
  b.add("automorphism_criterion", "exact", pq, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (const auto& [label, e] : {std::pair{"zero", zero_e(p)}, std::pair{"omega", omega(p)}})
      for (int mu = 0; mu <= q + 1; ++mu)
        if (is_poisson_automorphism(e, mu, p, q) != (mu % p == 1 % p)) bad.push_back({{"e", label}, {"mu", mu}});
    if (!bad.empty()) d["failing"] = bad;
    return bad.empty();
  });
  for (int mu = 0; mu <= q + 1; ++mu) {
    json in = pq;
    in["mu"] = mu;
    b.add("involutivity mu=" + std::to_string(mu), "exact", in, std::nullopt,
          [&](Rng&, json&) { return involutivity_check(p, q, mu); });
  }
  b.add("casimir_ranges", "exact", pq, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (int mu = 0; mu <= q + 1; ++mu)
      for (int i = 0; i < p; ++i) {
        std::vector<int> want;
        for (int j = 0; j <= (i + 1) * q; ++j)
          if (j < mu || j >= i * q + mu) want.push_back(j);
        const std::vector<int> got = casimir_indices(p, q, mu, i);
        if (got != want) bad.push_back({{"mu", mu}, {"i", i}, {"got", got}, {"expected", want}});
      }
    if (!bad.empty()) d["failing"] = bad;
    return bad.empty();
  });
  json in = pq;
  in["samples"] = cfg.samples;
  b.add("hamiltonian_vf_equals_lax", "exact", in, std::nullopt, [&](Rng& rng, json& d) {
    for (int s = 0; s < cfg.samples; ++s) {
      const PolyMat<Cyclotomic> L = random_polymat(rng, p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j <= (i + 1) * q; ++j)
          for (int mu = 0; mu <= q + 1; ++mu)
            if (!vf_consistency_check(L, i, j, mu)) {
              d = {{"i", i}, {"j", j}, {"mu", mu}, {"point", io::to_json(L)}};
              return false;
            }
    }
    return true;
  });
}

void reduction_suite(const SuiteConfig& cfg, SuiteBuilder& b) {
  const int p = cfg.p, dp = cfg.dprime, d = p * dp;
  const EVector e = parse_e(cfg.e, p);
  const PhiSpec phi = phi_of(cfg);
  json base{{"p", p}, {"dprime", dp}, {"e", e}};
  for (int top : {1, p + 1}) {
    json in = base;
    in["phi"] = "x^" + std::to_string(top);
    b.add("reduced_bracket phi=x^" + std::to_string(top), "exact", in, std::nullopt, [&](Rng&, json& det) {
      const VarSpace s{p, d};
      ReducedBracket red(s, e, BracketSpec::single(top));
      ExtensionBracket ext(s, e, BracketSpec::single(top));
      for (int a = 0; a < s.count(); ++a) {
        if (!admissible_var(s, e, a)) continue;
        for (int c = 0; c < s.count(); ++c) {
          if (!admissible_var(s, e, c)) continue;
          if (red.coord(a, c) != ext.coord(a, c)) {
            det = {{"a", s.name(a)}, {"b", s.name(c)}, {"formula", red.coord(a, c).to_string(s)},
                   {"extension", ext.coord(a, c).to_string(s)}};
            return false;
          }
        }
      }
      return true;
    });
  }
  json in = base;
  in["samples"] = cfg.samples;
  b.add("lie_homo", "exact", in, std::nullopt,
        [&](Rng& rng, json&) { return lie_homo_check(p, e, phi, cfg.samples, rng); });
  b.add("b_br", "exact", base, std::nullopt, [&](Rng&, json&) { return b_br_check(p, e, phi); });
  b.add("h_moment", "exact", in, std::nullopt, [&](Rng& rng, json& det) {
    for (int s = 0; s < cfg.samples; ++s) {
      const PolyMat<Cyclotomic> B = random_extended_point(rng, p, d, e);
      if (!infinitesimal_action_check(e, phi, B)) {
        det["point"] = io::to_json(B);
        return false;
      }
    }
    return true;
  });
  b.add("casimir_certificates", "exact", in, std::nullopt, [&](Rng& rng, json& det) {
    json bad = json::array();
    for (int i = 0; i < p; ++i)
      for (int m = 0; m <= i * dp + 2; ++m) {
        const CasimirKind want = m >= i * dp + 1 ? CasimirKind::ZeroField
                                 : m == i * dp   ? CasimirKind::TangentToOrbits
                                                 : CasimirKind::NotCasimirRange;
        const CasimirKind got = casimir_certificate(p, e, dp, i, m, cfg.samples, rng);
        if (got != want) bad.push_back({{"i", i}, {"m", m}, {"got", to_string(got)}, {"expected", to_string(want)}});
      }
    if (!bad.empty()) det["failing"] = bad;
    return bad.empty();
  });
  b.add("g_invariance", "exact", in, std::nullopt, [&](Rng& rng, json& det) {
    for (int i = 0; i < p; ++i)
      for (int m = 0; m <= (i + 1) * dp; ++m)
        if (!g_invariance_check(p, e, dp, i, p * m, cfg.samples, rng)) {
          det = {{"i", i}, {"j", p * m}};
          return false;
        }
    return true;
  });
  b.add("eta_tangency", "exact", in, std::nullopt, [&](Rng& rng, json& det) {
    for (int s = 0; s < cfg.samples; ++s) {
      const PolyMat<Cyclotomic> B = embed_eta(random_fixed(rng, p, d, e), d, e);
      for (int i = 1; i < p + 1; ++i)
        for (int m = 0; m <= i * dp + 1; ++m)
          if (!eta_tangency_check(B, d, e, i, m)) {
            det = {{"i", i}, {"m", m}, {"point", io::to_json(B)}};
            return false;
          }
    }
    return true;
  });
  b.add("reduced_vf_equals_lax", "exact", in, std::nullopt, [&](Rng& rng, json& det) {
    for (int s = 0; s < cfg.samples; ++s) {
      const PolyMat<Cyclotomic> B = random_fixed(rng, p, d, e);
      for (int i = 0; i < p; ++i)
        for (int m = 0; m <= dp + 1; ++m)
          for (int n = 0; n <= 1; ++n)
            if (!reduced_vf_consistency_check(B, e, i, m, n)) {
              det = {{"i", i}, {"m", m}, {"n", n}, {"point", io::to_json(B)}};
              return false;
            }
    }
    return true;
  });
}

void flows_suite(const SuiteConfig& cfg, SuiteBuilder& b) {
  const int p = cfg.p, q = cfg.q;
  const double tol = cfg.tolerance;
  b.add("isospectral", "exact", {{"p", p}, {"q", q}}, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (int i = 1; i < p; ++i)
      for (int j = 1; j <= 2; ++j)
        if (!isospectral_check(p, q, i, j)) bad.push_back({i, j});
    if (!bad.empty()) d["failing"] = bad;
    return bad.empty();
  });
  b.add("commuting_fields (1,1) (1,2)", "exact", {{"p", p}, {"q", q}, {"samples", cfg.samples}}, std::nullopt,
        [&](Rng& rng, json& d) {
          for (int s = 0; s < cfg.samples; ++s) {
            const PolyMat<Cyclotomic> L = random_polymat(rng, p, q);
            if (!vector_field_bracket(L, {1, 1}, {1, 2}).is_zero()) {
              d["point"] = io::to_json(L);
              return false;
            }
          }
          return true;
        });
  b.add("rk4_drift (1,1)", "float", {{"point", io::to_json(moving_point())}, {"h", 1e-3}, {"t_end", 1.0}}, tol,
        [&](Rng&, json& d) {
          const double v = flow_drift(moving_point(), 1, 1, 1e-3);
          d["max_charpoly_drift"] = v;
          return v <= tol;
        });
  b.add("rk4_drift (1,2)", "float", {{"point", io::to_json(standard_point())}, {"h", 1e-3}, {"t_end", 1.0}}, tol,
        [&](Rng&, json& d) {
          const double v = flow_drift(standard_point(), 1, 2, 1e-3);
          d["max_charpoly_drift"] = v;
          return v <= tol;
        });
  b.add("rk4_order", "float", {{"min_ratio", 8.0}}, std::nullopt, [&](Rng&, json& d) {
    const double a = flow_drift(moving_point(), 1, 1, 1e-3), a2 = flow_drift(moving_point(), 1, 1, 5e-4);
    const double c = flow_drift(standard_point(), 1, 2, 0.1), c2 = flow_drift(standard_point(), 1, 2, 0.05);
    d = {{"(1,1) h=1e-3", a}, {"(1,1) h=5e-4", a2}, {"(1,2) h=0.1", c}, {"(1,2) h=0.05", c2}};
    return a >= 8.0 * a2 && c >= 8.0 * c2;
  });
  b.add("fixed_locus_tangency", "float", {{"point", io::to_json(standard_point())}, {"i", 1}, {"j", 2}, {"e", omega(2)}},
        tol, [&](Rng&, json& d) {
          FlowConfig fc;
          fc.i = 1;
          fc.j = 2;
          fc.e = omega(2);
          const double dev = integrate(to_complex(standard_point()), fc).report.fixed_locus_deviation;
          d["fixed_locus_deviation"] = dev;
          return dev <= tol;
        });
  b.add("reduced_rhs_fixed", "exact", {{"p", p}, {"samples", cfg.samples}}, std::nullopt, [&](Rng& rng, json& d) {
    for (int s = 0; s < cfg.samples; ++s) {
      const PolyMat<Cyclotomic> B = random_fixed(rng, p, 2 * p, omega(p));
      for (int i = 0; i < p; ++i)
        for (int m = 0; m <= 2; ++m)
          if (!is_fixed(reduced_lax_rhs(B, omega(p), i, m), omega(p))) {
            d = {{"i", i}, {"m", m}, {"point", io::to_json(B)}};
            return false;
          }
    }
    return true;
  });
}

json corpus_entry_json(const CorpusCurve& c, const CurveCert& cert) {
  return {{"label", c.label},
          {"curve", c.curve.to_string()},
          {"constructed_reducible", !c.factors.empty()},
          {"exact_verdict", to_string(cert.exact_verdict)},
          {"exact_method", cert.exact_method},
          {"monodromy_verdict", to_string(cert.monodromy_verdict)}};
}

void spectral_suite(const SuiteConfig& cfg, SuiteBuilder& b) {
  const int p = cfg.p, dp = cfg.dprime;
  b.add("genus_riemann_hurwitz", "exact", {{"p", p}, {"dprime_max", 4}}, std::nullopt, [&](Rng&, json& d) {
    json bad = json::array();
    for (int k = 1; k <= 4; ++k)
      if (!rh_consistency(p, k)) bad.push_back(k);
    if (!bad.empty()) d["failing_dprime"] = bad;
    return bad.empty();
  });
  b.add("quotient_and_diagram", "exact", {{"p", p}, {"q", p * dp}, {"samples", cfg.samples}}, std::nullopt,
        [&](Rng& rng, json& d) {
          for (const auto& e : enumerate_E(p))
            for (int s = 0; s < cfg.samples; ++s) {
              const PolyMat<Cyclotomic> L = random_fixed(rng, p, p * dp, e);
              if (!alpha_and_chi(L, e).commutes) {
                d = {{"e", e}, {"point", io::to_json(L)}};
                return false;
              }
            }
          return true;
        });
  b.add("hamiltonian_rank", "exact", {{"p", p}, {"dprime", dp}, {"samples", cfg.samples}}, std::nullopt,
        [&](Rng& rng, json& d) {
          d["s_prime"] = s_prime(p, dp);
          for (int s = 0; s < cfg.samples; ++s) {
            const PolyMat<Cyclotomic> L = random_generic_fixed(rng, p, p * dp, omega(p));
            const int r = hamiltonian_rank(omega(p), p, dp, L);
            if (r != s_prime(p, dp)) {
              d["rank"] = r;
              d["point"] = io::to_json(L);
              return false;
            }
          }
          return true;
        });
  b.add("irreducibility_corpus", "mixed", {{"corpus", "builtin-10"}}, 1e-8, [&](Rng&, json& d) {
    bool ok = true;
    int exact_cases = 0, reducible = 0, irreducible = 0;
    json rows = json::array();
    for (const auto& c : irreducibility_corpus()) {
      const CurveCert cert = irreducible_cert(c.curve);
      const bool red = !c.factors.empty();
      (red ? reducible : irreducible)++;
      if (cert.exact_verdict != Verdict::Unknown) ++exact_cases;
      const bool agree = red ? cert.monodromy_verdict == Verdict::Reducible &&
                                   cert.exact_verdict != Verdict::IrreducibleExact
                             : cert.monodromy_verdict == Verdict::IrreducibleMonodromy &&
                                   cert.exact_verdict != Verdict::Reducible;
      ok = ok && agree;
      json row = corpus_entry_json(c, cert);
      row["agree"] = agree;
      rows.push_back(std::move(row));
    }
    d = {{"curves", rows}, {"exact_criterion_cases", exact_cases}, {"reducible", reducible}, {"irreducible", irreducible}};
    return ok && exact_cases >= 2 && reducible >= 3 && irreducible >= 5;
  });
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("LAXCYC_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::strlen(env)) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw io::InputError(std::string("LAXCYC_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag;
}

int exit_code(const Report& r) { return r.overall() == Outcome::Pass ? 0 : 1; }

void emit(const Report& r, const std::string& out_path, bool timings, std::ostream& out) {
  if (!out_path.empty()) io::write_file(out_path, r.to_json(timings));
  r.print_summary(out);
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Writes to `path`, or to `fallback` when path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw io::InputError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  if (!is_prime(cfg.p)) throw io::InputError("p must be prime, got " + std::to_string(cfg.p));
  if (cfg.q < 0 || cfg.dprime < 1 || cfg.samples < 0 || cfg.triples < 0)
    throw io::InputError("q >= 0, dprime >= 1, samples >= 0 and triples >= 0 required");
  // Symbolic traces of L^p have too many terms beyond p = 3.
  if ((cfg.suite == "poisson" || cfg.suite == "flows") && cfg.p > 3)
    throw io::InputError("the " + cfg.suite + " suite supports p = 2 or 3, got " + std::to_string(cfg.p));
  Report r;
  r.suite = cfg.suite;
  r.seed = cfg.seed;
  r.config = cfg.to_json();
  SuiteBuilder b(r, cfg.seed);
  if (cfg.suite == "symmetry") {
    r.mode = "exact";
    symmetry_suite(cfg, b);
  } else if (cfg.suite == "poisson") {
    r.mode = "exact";
    poisson_suite(cfg, b);
  } else if (cfg.suite == "reduction") {
    r.mode = "exact";
    reduction_suite(cfg, b);
  } else if (cfg.suite == "flows") {
    r.mode = "mixed";
    flows_suite(cfg, b);
  } else if (cfg.suite == "spectral") {
    r.mode = "mixed";
    spectral_suite(cfg, b);
  } else {
    throw io::InputError("unknown suite '" + cfg.suite + "' (symmetry, poisson, reduction, flows, spectral)");
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclic Lax matrices: symmetry classes, Poisson structures, flows and spectral certificates", "laxcyc"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out_path;
  bool timings = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (LAXCYC_SEED overrides)");
    sub->add_option("--out", out_path, "write the JSON report here");
    sub->add_flag("--timings", timings, "include per-check wall times in the JSON report");
  };

  int p = 2, q = 2, d = 2, i = 1, j = 1, mu = 1, sample_every = 1;
  std::string e_sel, fb_e = "omega", matrix_path, curve_path, csv_path;
  std::vector<std::string> phi;
  bool use_float = false;
  double t_end = 1.0, step = 1e-3, tol = 1e-8, abort_drift = 1e-2;

  auto* enum_e = app.add_subcommand("enumerate-e", "list the classes E_p of torsion exponents");
  enum_e->add_option("--p", p, "prime size")->required();
  common(enum_e);

  auto* fb = app.add_subcommand("fixed-basis", "basis of the sigma_e fixed space");
  fb->add_option("--p", p, "matrix size")->required();
  fb->add_option("--d", d, "degree bound")->required();
  fb->add_option("--e", fb_e, "omega, zero or comma-separated residues");
  common(fb);

  auto* cls = app.add_subcommand("classify", "E class of a torsion matrix (JSON {\"zeta_order\", \"rows\"})");
  cls->add_option("--matrix", matrix_path, "JSON {\"zeta_order\", \"rows\"}")->required();
  cls->add_option("--p", p, "prime order of the torsion")->required();
  cls->add_flag("--float", use_float, "floating-point eigenvalues instead of exact factorization");
  common(cls);

  auto* conj = app.add_subcommand("conjugator", "solve tau(L) g = g L for a polynomial matrix");
  conj->add_option("--matrix", matrix_path, "polynomial matrix JSON")->required();
  conj->add_flag("--float", use_float, "SVD null space instead of exact kernel");
  common(conj);

  auto* bt = app.add_subcommand("bracket-table", "coordinate brackets as CSV");
  bt->add_option("--p", p, "matrix size")->required();
  bt->add_option("--q", q, "degree bound")->required();
  bt->add_option("--mu", mu, "single bracket index (ignored with --phi)");
  bt->add_option("--phi", phi, "weights c_0..c_k of the bracket pencil")->delimiter(',');
  bt->add_option("--e", e_sel, "restrict to the sigma_e fixed locus (reduced bracket)");
  bt->add_option("--csv", csv_path, "output file (default stdout)");

  SuiteConfig cfg;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, "symmetry | poisson | reduction | flows | spectral")->required();
  verify->add_option("--p", cfg.p, "prime matrix size (poisson and flows: 2 or 3)")->capture_default_str();
  verify->add_option("--q", cfg.q, "degree bound")->capture_default_str();
  verify->add_option("--dprime", cfg.dprime, "reduced degree d' (d = p d')")->capture_default_str();
  verify->add_option("--e", cfg.e, "omega, zero or comma-separated residues")->capture_default_str();
  verify->add_option("--phi", cfg.phi, "c'_0..c'_{d'+1}")->delimiter(',');
  verify->add_option("--samples", cfg.samples, "random points per sampled check")->capture_default_str();
  verify->add_option("--triples", cfg.triples, "coordinate triples per Jacobi check")->capture_default_str();
  verify->add_option("--tol", cfg.tolerance, "tolerance of float checks")->capture_default_str();
  common(verify);

  auto* flow = app.add_subcommand("flow", "RK4 integration of a Lax flow with invariant monitoring");
  flow->add_option("--matrix", matrix_path, "initial point, polynomial matrix JSON")->required();
  flow->add_option("--i", i, "power of L")->required();
  flow->add_option("--j", j, "power of x divided out")->required();
  flow->add_option("--t-end", t_end, "final time")->capture_default_str();
  flow->add_option("--step", step, "RK4 step")->capture_default_str();
  flow->add_option("--e", e_sel, "monitor distance to the sigma_e fixed locus");
  flow->add_option("--csv", csv_path, "trajectory CSV (default stdout; the summary then goes to stderr)");
  flow->add_option("--tol", tol, "drift tolerance")->capture_default_str();
  flow->add_option("--abort-drift", abort_drift, "stop when an invariant drifts beyond this")->capture_default_str();
  flow->add_option("--sample-every", sample_every, "steps between CSV rows")->capture_default_str();
  common(flow);

  auto* spec = app.add_subcommand("spectral", "spectral curve certificates for a matrix or a curve");
  auto* m_opt = spec->add_option("--matrix", matrix_path, "polynomial matrix JSON");
  auto* c_opt = spec->add_option("--curve", curve_path, "JSON {\"zeta_order\", \"coeffs\"}, coeffs[i][j] of x^i y^j");
  m_opt->excludes(c_opt);
  spec->add_option("--branch-csv", csv_path, "branch points as CSV");
  common(spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    seed = effective_seed(seed);
    cfg.seed = seed;

    if (*enum_e) {
      if (!is_prime(p)) throw io::InputError("p must be prime");
      Report r;
      r.suite = "enumerate-e";
      r.mode = "exact";
      r.seed = seed;
      r.config = {{"p", p}};
      const auto E = enumerate_E(p);
      json classes = json::array();
      for (const auto& e : E) classes.push_back({{"e", e}, {"multiplicities", multiplicities(e, p)}});
      r.data = {{"classes", classes}};
      Check c{"count_matches_formula", E.size() == e_count_formula(p) ? Outcome::Pass : Outcome::Fail, "exact",
              std::nullopt, {{"p", p}}, {{"count", E.size()}, {"formula", e_count_formula(p)}}, 0.0};
      r.checks.push_back(c);
      out << E.size() << " classes for p = " << p << '\n';
      for (const auto& e : E) {
        out << "  e = (";
        for (std::size_t k = 0; k < e.size(); ++k) out << (k ? "," : "") << e[k];
        out << ")\n";
      }
      emit(r, out_path, timings, out);
      return exit_code(r);
    }

    if (*fb) {
      if (!is_prime(p)) throw io::InputError("p must be prime");
      if (d < 0) throw io::InputError("d must be non-negative");
      const EVector e = parse_e(fb_e, p);
      const FixedBasis basis = fixed_basis(p, d, e);
      Report r;
      r.suite = "fixed-basis";
      r.mode = "exact";
      r.seed = seed;
      r.config = {{"p", p}, {"d", d}, {"e", e}};
      json slots = json::array();
      for (const auto& [a, b, k] : basis.basis) slots.push_back({a, b, k});
      r.data = {{"dimension", basis.dimension()}, {"basis", slots}};
      std::optional<std::size_t> expected;
      if (e == omega(p)) expected = static_cast<std::size_t>((d + 1) * p);
      if (e == zero_e(p)) expected = static_cast<std::size_t>((d / p + 1) * p * p);
      if (expected)
        r.checks.push_back({"dimension", basis.dimension() == *expected ? Outcome::Pass : Outcome::Fail, "exact",
                            std::nullopt, r.config, {{"dimension", basis.dimension()}, {"expected", *expected}}, 0.0});
      out << "dim = " << basis.dimension() << '\n';
      const VarSpace s{p, d};
      for (const auto& [a, b, k] : basis.basis) out << "  " << s.name(s.id(a, b, k)) << '\n';
      emit(r, out_path, timings, out);
      return exit_code(r);
    }

    if (*cls) {
      if (!is_prime(p)) throw io::InputError("p must be prime");
      const Mat<Cyclotomic> m = io::mat_from_json(io::read_file(matrix_path));
      if (m.rows() != p || m.cols() != p) throw io::InputError("matrix must be p x p");
      Report r;
      r.suite = "classify";
      r.mode = use_float ? "float" : "exact";
      r.seed = seed;
      r.config = {{"p", p}, {"matrix", matrix_path}};
      Check c{"torsion", Outcome::Pass, r.mode, use_float ? std::optional<double>(1e-8) : std::nullopt,
              {{"matrix", io::to_json(m)}}, nullptr, 0.0};
      try {
        const EVector e = use_float ? classify_torsion_float(m.map([](const Cyclotomic& v) { return v.embed(); }), p)
                                    : classify_torsion(m, p);
        r.data = {{"e", e}};
        out << "e = (";
        for (std::size_t k = 0; k < e.size(); ++k) out << (k ? "," : "") << e[k];
        out << ")\n";
      } catch (const NotTorsionError& ex) {
        c.verdict = Outcome::Fail;
        c.detail = {{"error", ex.what()}};
      }
      r.checks.push_back(c);
      emit(r, out_path, timings, out);
      return exit_code(r);
    }

    if (*conj) {
      const PolyMat<Cyclotomic> L = io::polymat_from_json(io::read_file(matrix_path));
      Report r;
      r.suite = "conjugator";
      r.mode = use_float ? "float" : "exact";
      r.seed = seed;
      r.config = {{"matrix", matrix_path}};
      ConjugatorStatus status;
      EVector found;
      if (use_float) {
        const ConjugatorFloatResult f = conjugator_float(to_complex(L));
        status = f.status;
        found = f.e;
        json g = json::array();
        for (int a = 0; a < f.g.rows(); ++a) {
          json row = json::array();
          for (int b = 0; b < f.g.cols(); ++b) row.push_back(io::to_json(f.g(a, b)));
          g.push_back(row);
        }
        r.data = {{"status", to_string(f.status)}, {"kernel_dim", f.kernel_dim}, {"e", f.e}, {"g", g},
                  {"singular_values", f.singular_values}};
      } else {
        const ConjugatorResult c = conjugator(L);
        status = c.status;
        found = c.e;
        r.data = {{"status", to_string(c.status)}, {"kernel_dim", c.kernel_dim}, {"e", c.e}};
        if (c.status == ConjugatorStatus::Found) r.data["g"] = io::to_json(c.g);
      }
      r.checks.push_back({"conjugator_found", status == ConjugatorStatus::Found ? Outcome::Pass : Outcome::Fail,
                          r.mode, use_float ? std::optional<double>(1e-8) : std::nullopt, {{"matrix", io::to_json(L)}},
                          nullptr, 0.0});
      out << "status: " << to_string(status) << '\n';
      if (status == ConjugatorStatus::Found) {
        out << "e = (";
        for (std::size_t k = 0; k < found.size(); ++k) out << (k ? "," : "") << found[k];
        out << ")\n";
      }
      emit(r, out_path, timings, out);
      return exit_code(r);
    }

    if (*bt) {
      if (p < 1 || q < 0) throw io::InputError("p >= 1 and q >= 0 required");
      const VarSpace s{p, q};
      BracketSpec spec_b = BracketSpec::single(mu);
      if (!phi.empty()) {
        std::vector<Rational> w;
        for (const auto& v : phi) w.push_back(parse_rational(v));
        spec_b = BracketSpec::phi(std::move(w));
      }
      std::unique_ptr<BracketTable> table;
      std::optional<EVector> e;
      if (!e_sel.empty()) {
        e = parse_e(e_sel, p);
        table = std::make_unique<ReducedBracket>(s, *e, spec_b);
      } else {
        table = std::make_unique<LoopBracket>(s, spec_b);
      }
      Sink sink(csv_path, out);
      std::ostream& os = sink.stream();
      os << "i,j,k,m,n,l,mu,result\n";
      const std::string mu_label = spec_b.is_single() ? std::to_string(spec_b.mu()) : csv_quote(spec_b.to_string());
      for (int a = 0; a < s.count(); ++a) {
        if (e && !admissible_var(s, *e, a)) continue;
        for (int b = 0; b < s.count(); ++b) {
          if (e && !admissible_var(s, *e, b)) continue;
          os << s.row(a) + 1 << ',' << s.col(a) + 1 << ',' << s.power(a) << ',' << s.row(b) + 1 << ','
             << s.col(b) + 1 << ',' << s.power(b) << ',' << mu_label << ',' << csv_quote(table->coord(a, b).to_string(s))
             << '\n';
        }
      }
      return 0;
    }

    if (*verify) {
      const Report r = run_suite(cfg);
      emit(r, out_path, timings, out);
      return exit_code(r);
    }

    if (*flow) {
      const PolyMat<Cyclotomic> L = io::polymat_from_json(io::read_file(matrix_path));
      FlowConfig fc;
      fc.i = i;
      fc.j = j;
      fc.t_end = t_end;
      fc.h = step;
      fc.sample_every = sample_every;
      fc.abort_drift = abort_drift;
      if (!e_sel.empty()) fc.e = parse_e(e_sel, L.p());
      Report r;
      r.suite = "flow";
      r.mode = "float";
      r.seed = seed;
      r.config = {{"matrix", matrix_path}, {"i", i}, {"j", j}, {"t_end", t_end}, {"step", step}, {"tolerance", tol},
                  {"abort_drift", abort_drift}};
      if (fc.e) r.config["e"] = *fc.e;
      const json input{{"point", io::to_json(L)}, {"i", i}, {"j", j}, {"t_end", t_end}, {"step", step}};
      std::ostream& human = csv_path.empty() ? err : out;
      try {
        const FlowResult res = integrate(to_complex(L), fc);
        Sink sink(csv_path, out);
        std::ostream& os = sink.stream();
        os << "t";
        for (const auto& n : res.report.names) os << ',' << csv_quote(n + ".re") << ',' << csv_quote(n + ".im");
        os << '\n' << std::setprecision(17);
        for (std::size_t s = 0; s < res.times.size(); ++s) {
          os << res.times[s];
          for (const auto& v : res.samples[s]) os << ',' << v.real() << ',' << v.imag();
          os << '\n';
        }
        const InvariantReport& ir = res.report;
        r.data = {{"invariant_report",
                   {{"names", ir.names},
                    {"max_drift", ir.max_drift},
                    {"max_charpoly_drift", ir.max_charpoly_drift},
                    {"max_hamiltonian_drift", ir.max_hamiltonian_drift},
                    {"fixed_locus_deviation", ir.fixed_locus_deviation},
                    {"steps", ir.steps},
                    {"h", ir.h}}}};
        r.checks.push_back({"charpoly_drift", ir.max_charpoly_drift <= tol ? Outcome::Pass : Outcome::Fail, "float", tol,
                            input, {{"max_charpoly_drift", ir.max_charpoly_drift}}, ir.wall_seconds});
        if (fc.e)
          r.checks.push_back({"fixed_locus_tangency", ir.fixed_locus_deviation <= tol ? Outcome::Pass : Outcome::Fail,
                              "float", tol, input, {{"fixed_locus_deviation", ir.fixed_locus_deviation}}, 0.0});
      } catch (const FlowInstability& ex) {
        r.checks.push_back({"stability", Outcome::Fail, "float", abort_drift, input, {{"error", ex.what()}}, 0.0});
      }
      emit(r, out_path, timings, human);
      return exit_code(r);
    }

    if (*spec) {
      if (matrix_path.empty() == curve_path.empty()) throw io::InputError("give exactly one of --matrix or --curve");
      Curve P;
      int pp = 0, dd = 0;
      if (!matrix_path.empty()) {
        const PolyMat<Cyclotomic> L = io::polymat_from_json(io::read_file(matrix_path));
        P = char_poly(L);
        pp = L.p();
        dd = L.q();
      } else {
        P = io::curve_from_json(io::read_file(curve_path));
        pp = P.deg_y();
        for (int k = 1; k <= pp; ++k) {
          const int deg = P.ycoeff(pp - k).degree();
          if (deg > 0) dd = std::max(dd, (deg + k - 1) / k);
        }
      }
      if (pp < 1) throw io::InputError("curve must have positive degree in y");
      Report r;
      r.suite = "spectral";
      r.mode = "mixed";
      r.seed = seed;
      r.config = {{"source", matrix_path.empty() ? curve_path : matrix_path}};
      const json input{{"curve", io::to_json(P)}};
      const CurveCert cert = irreducible_cert(P);
      auto cert_json = [](const CurveCert& c) {
        json j{{"monic", c.monic},
               {"exact_verdict", to_string(c.exact_verdict)},
               {"exact_method", c.exact_method},
               {"monodromy_verdict", to_string(c.monodromy_verdict)},
               {"verdict", to_string(c.verdict)},
               {"diagnostic", c.diagnostic}};
        j["factor"] = c.factor ? io::to_json(*c.factor) : json(nullptr);
        return j;
      };
      r.data = {{"p", pp}, {"d", dd}, {"curve", P.to_string()}, {"certificate", cert_json(cert)}};
      const GenusData g = genus(pp, dd);
      r.data["genus"] = {{"p", g.p}, {"d", g.d}, {"genus", g.genus}};
      r.checks.push_back({"monic", cert.monic ? Outcome::Pass : Outcome::Fail, "exact", std::nullopt, input, nullptr, 0.0});
      r.checks.push_back({"v_membership", v_membership(P, pp, dd) ? Outcome::Pass : Outcome::Fail, "exact",
                          std::nullopt, input, {{"d", dd}}, 0.0});
      const Outcome irr = cert.verdict == Verdict::Reducible ? Outcome::Fail
                          : cert.verdict == Verdict::Unknown ? Outcome::Unknown
                                                             : Outcome::Pass;
      r.checks.push_back({"irreducible", irr, "mixed", 1e-8, input, {{"verdict", to_string(cert.verdict)}}, 0.0});

      out << "curve: " << P.to_string() << '\n';
      out << "genus(p=" << pp << ", d=" << dd << ") = " << g.genus << '\n';
      out << "verdict: " << to_string(cert.verdict) << " (exact: " << to_string(cert.exact_verdict)
          << ", monodromy: " << to_string(cert.monodromy_verdict) << ")\n";

      Curve branch_curve = P;
      int branch_d = dd;
      if (auto Q = quotient_Q(P, pp); Q && dd % pp == 0 && dd > 0) {
        const int dprime = dd / pp;
        const GenusData gq = genus(pp, dprime);
        const SplFlags spl = spl_cert(*Q, pp, dprime);
        const CurveCert qcert = irreducible_cert(*Q);
        r.data["quotient"] = {{"curve", Q->to_string()},
                              {"dprime", dprime},
                              {"genus", gq.genus},
                              {"riemann_hurwitz", rh_consistency(pp, dprime)},
                              {"spl", {{"q0_squarefree", spl.q0_squarefree}, {"qinf_squarefree", spl.qinf_squarefree}}},
                              {"certificate", cert_json(qcert)}};
        r.checks.push_back({"riemann_hurwitz", rh_consistency(pp, dprime) ? Outcome::Pass : Outcome::Fail, "exact",
                            std::nullopt, {{"p", pp}, {"dprime", dprime}}, nullptr, 0.0});
        out << "quotient Q: " << Q->to_string() << "  genus(p=" << pp << ", d'=" << dprime << ") = " << gq.genus
            << "  V'_spl: " << (spl.passes() ? "yes" : "no") << '\n';
        branch_curve = *Q;
        branch_d = dprime;
      }
      try {
        const BranchData bd = branch_points(branch_curve, pp, std::max(branch_d, 1));
        r.data["branch"] = {{"discriminant", poly_to_string(bd.discriminant)},
                            {"finite_count", bd.finite_branch_points.size()},
                            {"branch_at_zero", bd.branch_at_zero},
                            {"fiber_over_zero", bd.fiber_over_zero},
                            {"fiber_over_infinity", bd.fiber_over_infinity},
                            {"fq_branch_count", bd.fq_branch_count}};
        out << "finite branch points: " << bd.finite_branch_points.size() << '\n';
        if (!csv_path.empty()) {
          Sink sink(csv_path, out);
          std::ostream& os = sink.stream();
          os << "index,re,im,abs\n" << std::setprecision(17);
          int n = 0;
          for (const auto& z : bd.finite_branch_points)
            os << ++n << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
        }
      } catch (const std::domain_error& ex) {
        r.data["branch"] = {{"error", ex.what()}};
      }
      emit(r, out_path, timings, out);
      return exit_code(r);
    }
  } catch (const io::InputError& ex) {
    err << "input error: " << ex.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& ex) {
    err << "input error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return 3;
  }
  return 3;
}

}  // namespace laxcyc::cli
