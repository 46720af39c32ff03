#include "doctest.h"

#include "laxcyc/flows.hpp"
#include "laxcyc/reduction.hpp"

using namespace laxcyc;

TEST_CASE("image of eta") {
  const EVector e = omega(2);
  Rng rng(1);
  const PolyMat<Cyclotomic> B = random_fixed(rng, 2, 2, e);
  const PolyMat<Cyclotomic> ext = embed_eta(B, 2, e);
  CHECK(ext.q() == 4);
  CHECK(is_in_eta_image(ext, 2, e));
  CHECK(is_in_eta_image(PolyMat<Cyclotomic>(2, 4), 2, e));

  // one violated constraint at a time: b^4_11, b^4_22 (T_0) and b^3_12, b^3_21 (T_pm)
  const std::pair<std::array<int, 3>, std::string> cases[] = {
      {{0, 0, 4}, "b^4_11"}, {{1, 1, 4}, "b^4_22"}, {{0, 1, 3}, "b^3_12"}, {{1, 0, 3}, "b^3_21"}};
  for (const auto& [idx, label] : cases) {
    PolyMat<Cyclotomic> bad = ext;
    bad.set(idx[0], idx[1], idx[2], Cyclotomic(1));
    CHECK(is_fixed(bad, e));
    CHECK(eta_image_violations(bad, 2, e) == std::vector<std::string>{label});
  }
  CHECK_THROWS_AS(embed_eta(random_polymat(rng, 2, 2), 2, e), std::invalid_argument);
}

TEST_CASE("comoment") {
  const PhiSpec phi = PhiSpec::standard(1);
  const VarSpace s{2, 4};
  CHECK(comoment(2, omega(2), 0, 0, phi) == CoordFunction::var(s.id(0, 0, 4)));
  const PhiSpec scaled(1, {Rational(0), Rational(0), Rational(3)});
  CHECK(comoment(2, omega(2), 1, 1, scaled) == CoordFunction::var(s.id(1, 1, 4)).scaled(Cyclotomic(Rational(1, 3))));
  CHECK_THROWS_AS(comoment(2, omega(2), 0, 1, phi), std::invalid_argument);
  CHECK_THROWS_AS(PhiSpec(1, {Rational(1), Rational(1), Rational(0)}), std::invalid_argument);

  // the trace of the comoment vanishes on extended points, every comoment on image points
  Rng rng(2);
  const PolyMat<Cyclotomic> B = random_extended_point(rng, 3, 3, omega(3));
  CoordFunction tr;
  for (int i = 0; i < 3; ++i) tr += comoment(3, omega(3), i, i, PhiSpec::standard(1));
  CHECK(evaluate(tr, B).is_zero());
  const PolyMat<Cyclotomic> img = embed_eta(random_fixed(rng, 3, 3, omega(3)), 3, omega(3));
  for (int i = 0; i < 3; ++i) CHECK(evaluate(comoment(3, omega(3), i, i, PhiSpec::standard(1)), img).is_zero());
}

TEST_CASE("momentum map identities") {
  Rng rng(5);
  for (int p : {2, 3})
    for (int dprime : {1, 2}) {
      const PhiSpec phi = PhiSpec::standard(dprime);
      CHECK(lie_homo_check(p, omega(p), phi, 3, rng));
      CHECK(b_br_check(p, omega(p), phi));
      const PolyMat<Cyclotomic> B = random_extended_point(rng, p, p * dprime, omega(p));
      CHECK(infinitesimal_action_check(omega(p), phi, B));
    }
  // a class other than omega, with a block of size two, and a non-monomial phit
  const EVector e{0, 0, 1};
  const PhiSpec phi(1, {Rational(2), Rational(-1), Rational(1, 2)});
  CHECK(lie_homo_check(3, e, phi, 3, rng));
  CHECK(b_br_check(3, e, phi));
  CHECK(infinitesimal_action_check(e, phi, random_extended_point(rng, 3, 3, e)));
}

TEST_CASE("Casimir certificates") {
  Rng rng(6);
  const EVector e = omega(2);
  CHECK(casimir_certificate(2, e, 2, 1, 3, 5, rng) == CasimirKind::ZeroField);
  CHECK(casimir_certificate(2, e, 2, 1, 2, 5, rng) == CasimirKind::TangentToOrbits);
  CHECK(casimir_certificate(2, e, 2, 1, 1, 5, rng) == CasimirKind::NotCasimirRange);
  CHECK(casimir_certificate(2, e, 2, 0, 1, 5, rng) == CasimirKind::ZeroField);
  CHECK(casimir_certificate(3, omega(3), 1, 2, 2, 5, rng) == CasimirKind::TangentToOrbits);
  CHECK(casimir_certificate(3, omega(3), 1, 2, 3, 5, rng) == CasimirKind::ZeroField);
}

TEST_CASE("invariance under the centralizer") {
  Rng rng(7);
  CHECK(g_invariance_check(2, omega(2), 2, 1, 2, 3, rng));
  CHECK(g_invariance_check(3, omega(3), 1, 2, 3, 3, rng));
  CHECK(g_invariance_check(3, EVector{0, 0, 1}, 1, 1, 3, 3, rng));
  CHECK_THROWS_AS(g_invariance_check(2, omega(2), 1, 1, 1, 1, rng), std::invalid_argument);
}

TEST_CASE("reduced flows are tangent to the image of eta") {
  Rng rng(8);
  for (int p : {2, 3}) {
    const int d = 2 * p;
    const PolyMat<Cyclotomic> B = embed_eta(random_fixed(rng, p, d, omega(p)), d, omega(p));
    for (int i = 1; i <= 2; ++i)
      for (int m = 0; m <= 3; ++m) CHECK(eta_tangency_check(B, d, omega(p), i, m));
  }
  // (B^i / x^{pm})_+ vanishes on image points once m >= i d' + 1
  const PolyMat<Cyclotomic> B = embed_eta(random_fixed(rng, 2, 2, omega(2)), 2, omega(2));
  CHECK(reduced_lax_rhs(B, omega(2), 1, 2).is_zero());
}
