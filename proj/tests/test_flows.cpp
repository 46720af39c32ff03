#include "doctest.h"

#include "laxcyc/flows.hpp"
#include "laxcyc/random.hpp"

using namespace laxcyc;

namespace {

using PM = PolyMat<Cyclotomic>;

PM standard_point() {
  PM L(2, 2);
  L.set(0, 1, 1, Cyclotomic(1));
  L.set(1, 0, 1, Cyclotomic(1));
  L.set(1, 1, 2, Cyclotomic(1));
  return L;
}

// A rational point on which the (1, 1) flow moves and stays bounded on [0, 1].
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
  cfg.t_end = 1.0;
  return integrate(to_complex(L), cfg).report.max_charpoly_drift;
}

}  // namespace

TEST_CASE("Lax right-hand side") {
  const PM L = standard_point();
  const PM rhs2 = lax_rhs(L, 2, 2);
  const PM rhs1 = lax_rhs(L, 1, 2);
  for (int x0 : {-2, -1, 1, 3}) {
    const Cyclotomic x(x0);
    const Mat<Cyclotomic> A = L.eval(x);
    // (L^2/x^2)_+ = [[1, x], [x, 1 + x^2]]
    Mat<Cyclotomic> T(2, 2);
    T(0, 0) = 1;
    T(0, 1) = x;
    T(1, 0) = x;
    T(1, 1) = Cyclotomic(1) + x * x;
    CHECK(rhs2.eval(x) == A * T - T * A);
    // (L/x^2)_+ = E_22
    const Mat<Cyclotomic> E = Mat<Cyclotomic>::unit(2, 1, 1);
    CHECK(rhs1.eval(x) == A * E - E * A);
  }
  CHECK(lax_rhs(L, 0, 1).is_zero());
  CHECK(lax_rhs(L, 2, 0).is_zero());
  // (L/x)_+ = L/x commutes with L here, so the (1, 1) field vanishes
  CHECK(lax_rhs(L, 1, 1).is_zero());
}

TEST_CASE("reduced Lax field stays in the fixed locus") {
  Rng rng(14);
  for (int p : {2, 3}) {
    const PM B = random_fixed(rng, p, 2 * p, omega(p));
    for (int m = 0; m <= 2; ++m) CHECK(is_fixed(reduced_lax_rhs(B, omega(p), 1, m), omega(p)));
    CHECK(reduced_lax_rhs(B, omega(p), 0, 1).is_zero());
  }
  CHECK_THROWS_AS(reduced_lax_rhs(random_polymat(rng, 2, 2), omega(2), 1, 1), std::invalid_argument);
}

TEST_CASE("multi-Hamiltonian consistency at random points") {
  Rng rng(9);
  const PM L = random_polymat(rng, 2, 2);
  for (int mu = 1; mu <= 2; ++mu) CHECK(vf_consistency_check(L, 1, 1, mu));
  CHECK(vf_consistency_check(L, 0, 0, 1));
  const PM L3 = random_polymat(rng, 3, 1);
  for (int mu = 0; mu <= 2; ++mu) CHECK(vf_consistency_check(L3, 1, 1, mu));
}

TEST_CASE("isospectrality and commuting flows") {
  CHECK(isospectral_check(2, 2, 1, 1));
  CHECK(isospectral_check(2, 3, 1, 2));
  CHECK(isospectral_check(3, 1, 2, 1));
  Rng rng(10);
  for (int t = 0; t < 5; ++t) {
    const PM L = random_polymat(rng, 2, 2);
    CHECK(vector_field_bracket(L, {1, 1}, {1, 2}).is_zero());
  }
}

TEST_CASE("RK4 conservation") {
  CHECK(drift(standard_point(), 1, 1, 1e-3) == 0.0);
  CHECK(drift(standard_point(), 1, 2, 1e-3) <= 1e-8);
  CHECK(drift(moving_point(), 1, 1, 1e-3) <= 1e-8);
  // fourth order: halving h should gain about 16x, at least 8x
  CHECK(drift(moving_point(), 1, 1, 1e-3) >= 8.0 * drift(moving_point(), 1, 1, 5e-4));
  CHECK(drift(standard_point(), 1, 2, 0.1) >= 8.0 * drift(standard_point(), 1, 2, 0.05));
}

TEST_CASE("flow bookkeeping") {
  FlowConfig cfg;
  cfg.i = 0;
  cfg.j = 1;
  cfg.h = 0.3;
  cfg.sample_every = 2;
  const FlowResult r = integrate(to_complex(standard_point()), cfg);
  CHECK(r.report.steps == 4);
  CHECK(r.report.h == doctest::Approx(0.25));
  CHECK(r.times.back() == doctest::Approx(1.0));
  CHECK(r.times.size() == 3);
  CHECK(r.report.max_charpoly_drift == 0.0);
  CHECK(r.report.names.size() == static_cast<std::size_t>(charpoly_invariant_count(2, 2)) + 3 + 5);

  cfg.i = 1;
  cfg.j = 1;
  cfg.h = 1e-3;
  Rng rng(7);
  const PM runaway = random_polymat(rng, 2, 2);
  CHECK_THROWS_AS(integrate(to_complex(runaway), cfg), FlowInstability);
  cfg.h = -1;
  CHECK_THROWS_AS(integrate(to_complex(runaway), cfg), std::invalid_argument);
}

TEST_CASE("tangency monitoring on the fixed locus") {
  Rng rng(3);
  PM B = random_fixed(rng, 2, 2, omega(2));
  FlowConfig cfg;
  cfg.i = 1;
  cfg.j = 2;
  cfg.h = 1e-3;
  cfg.t_end = 1.0;
  cfg.e = omega(2);
  cfg.abort_drift = 1e9;
  const FlowResult r = integrate(to_complex(B), cfg);
  CHECK(r.report.fixed_locus_deviation <= 1e-8);
}
