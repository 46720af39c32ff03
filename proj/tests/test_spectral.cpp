#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "laxcyc/random.hpp"
#include "laxcyc/spectral.hpp"
#include "curve_oracle.hpp"

using namespace laxcyc;

namespace {

using P = Poly<Cyclotomic>;

const Curve X = Curve::from_ycoeffs({P::x()});
const Curve Y = Curve::from_ycoeffs({P(0), P(1)});

Curve C(int c) { return Curve::from_ycoeffs({P(c)}); }

bool is_square(const Rational& r) {
  if (sgn(r) < 0) return false;
  if (sgn(r) == 0) return true;
  const mpz_class n = r.get_num(), d = r.get_den();
  return mpz_class(sqrt(n)) * mpz_class(sqrt(n)) == n && mpz_class(sqrt(d)) * mpz_class(sqrt(d)) == d;
}

}  // namespace

TEST_CASE("membership and quotient") {
  const Curve P1 = Y * Y - X * X * Y - X * X;
  CHECK(v_membership(P1, 2, 2));
  CHECK(v_membership(Y * Y - X * X * X, 2, 2));
  CHECK_FALSE(v_membership(Y * Y - X * X * X * X * X, 2, 2));
  CHECK_FALSE(v_membership(C(2) * Y * Y - X, 2, 2));

  const auto Q = quotient_Q(P1, 2);
  REQUIRE(Q.has_value());
  CHECK(*Q == Y * Y - X * Y - X);
  CHECK_FALSE(quotient_Q(Y * Y - X * Y, 2).has_value());
  CHECK(*quotient_Q(Y * Y - C(3), 2) == Y * Y - C(3));
}

TEST_CASE("genus and Riemann-Hurwitz") {
  CHECK(genus(2, 4).genus == 3);
  CHECK(genus(2, 2).genus == 1);
  CHECK(genus(3, 3).genus == 7);
  CHECK(genus(3, 1).genus == 1);
  CHECK(genus(2, 1).genus == 0);
  for (int p : {2, 3, 5, 7})
    for (int dp = 1; dp <= 4; ++dp) CHECK(rh_consistency(p, dp));
}

TEST_CASE("V'_spl certificates") {
  const SplFlags bad = spl_cert(Y * Y - X - X * X, 2, 1);
  CHECK_FALSE(bad.q0_squarefree);
  CHECK_FALSE(bad.passes());
  const SplFlags good = spl_cert(Y * Y - X * X - X - C(1), 2, 1);
  CHECK(good.passes());
  CHECK(good.q0 == P({Cyclotomic(-1), Cyclotomic(0), Cyclotomic(1)}));
  CHECK(good.qinf == good.q0);
  CHECK(spl_cert(Y * Y - C(1), 2, 1).q0_squarefree);
}

TEST_CASE("branch points") {
  const BranchData b = branch_points(Y * Y - X * X - X - C(1), 2, 1);
  // 4 (x^2 + x + 1)
  CHECK(b.discriminant == P({Cyclotomic(4), Cyclotomic(4), Cyclotomic(4)}));
  REQUIRE(b.finite_branch_points.size() == 2);
  for (const auto& z : b.finite_branch_points) CHECK(std::abs(z * z + z + 1.0) < 1e-12);
  CHECK(b.fq_branch_count == 4);
  CHECK_FALSE(b.branch_at_zero);

  const BranchData sq = branch_points(Y * Y - X, 2, 1);
  CHECK(sq.branch_at_zero);
  CHECK(sq.fiber_over_zero == 1);

  // cubic discriminant against -4a^3 - 27b^2 for y^3 + a y + b
  const Curve cubic = Y * Y * Y + X * Y + C(2);
  const P a = P::x(), bb = P(2);
  CHECK(discriminant_y(cubic) == P(-4) * a * a * a - P(27) * bb * bb);
  CHECK_THROWS_AS(branch_points((Y - X) * (Y - X), 2, 1), std::domain_error);
}

TEST_CASE("irreducibility examples") {
  const CurveCert r = irreducible_cert(Y * Y - X * X);
  CHECK(r.verdict == Verdict::Reducible);
  CHECK(r.monodromy_verdict == Verdict::Reducible);
  REQUIRE(r.factor.has_value());
  CHECK(r.factor->deg_y() == 1);

  const CurveCert i = irreducible_cert(Y * Y - X * X * Y - X * X);
  CHECK(i.exact_verdict == Verdict::IrreducibleExact);
  CHECK(i.exact_method.find("x = 1") != std::string::npos);
  CHECK(i.monodromy_verdict == Verdict::IrreducibleMonodromy);

  // y^2 - x^2 - x - 1: 2-cycle around each of the two branch points
  const MonodromyResult m = monodromy(Y * Y - X * X - X - C(1));
  CHECK(m.verdict == Verdict::IrreducibleMonodromy);
  REQUIRE(m.permutations.size() == 2);
  for (const auto& perm : m.permutations) CHECK(perm == std::vector<int>{1, 0});
  const CurveCert both = irreducible_cert(Y * Y - X * X - X - C(1));
  CHECK(both.exact_verdict == Verdict::IrreducibleExact);
  CHECK(both.monodromy_verdict == Verdict::IrreducibleMonodromy);

  // linear in x
  CHECK(exact_irreducibility(Y * Y * Y - X).exact_verdict == Verdict::IrreducibleExact);
  const CurveCert lin = exact_irreducibility((Y + C(1)) * (Y * Y - X));
  CHECK(lin.exact_verdict == Verdict::Reducible);
  REQUIRE(lin.factor.has_value());
  CHECK(*lin.factor == Y + C(1));

  CHECK_FALSE(irreducible_cert(C(2) * Y * Y - X).monic);
}

TEST_CASE("monodromy exhibits factors of products") {
  const Curve F = Y - X * X - C(1), G = Y + X;
  const MonodromyResult m = monodromy(F * G);
  CHECK(m.verdict == Verdict::Reducible);
  CHECK(m.orbits.size() == 2);
  REQUIRE(m.factor.has_value());
  CHECK((*m.factor == F || *m.factor == G));

  const Curve H = (Y * Y - X) * (Y - X - C(2));
  const MonodromyResult mh = monodromy(H);
  CHECK(mh.verdict == Verdict::Reducible);
  CHECK(mh.orbits.size() == 2);
}

TEST_CASE("specialization oracle for quadratics") {
  // y^2 + b y + c has a rational root iff b^2 - 4c is a rational square
  for (int b = -3; b <= 3; ++b)
    for (int c = -4; c <= 4; ++c) {
      const Curve Pc = Y * Y + C(b) * Y + C(c) + X * X * X;
      const CurveCert cert = exact_irreducibility(Pc);
      // at x = 0 the specialization is y^2 + b y + c
      if (!is_square(Rational(b * b - 4 * c))) {
        CHECK(cert.exact_verdict == Verdict::IrreducibleExact);
        CHECK(cert.exact_method.find("x = 0") != std::string::npos);
      }
    }
}

TEST_CASE("Newton conversion examples") {
  CHECK(newton_convert(std::vector<Cyclotomic>{Cyclotomic(3), Cyclotomic(5)}) ==
        std::vector<Cyclotomic>{Cyclotomic(3), Cyclotomic(2)});
  CHECK(newton_convert(std::vector<Cyclotomic>{Cyclotomic(7)}) == std::vector<Cyclotomic>{Cyclotomic(7)});
  const auto e = newton_convert(std::vector<Cyclotomic>{Cyclotomic(4), Cyclotomic(0)});
  CHECK(e[1] == Cyclotomic(8));
}

TEST_CASE("the alpha/chi diagram") {
  PolyMat<Cyclotomic> L(2, 2);
  L.set(0, 1, 1, Cyclotomic(1));
  L.set(1, 0, 1, Cyclotomic(1));
  L.set(1, 1, 2, Cyclotomic(1));
  const DiagramResult d = alpha_and_chi(L, omega(2));
  CHECK(d.chi == Y * Y - X * Y - X);
  REQUIRE(d.alpha.size() == 2);
  CHECK(d.alpha[0] == P::x());
  CHECK(d.alpha[1] == P::x() + P::monomial(2, Cyclotomic(Rational(1, 2))));
  CHECK(d.commutes);

  const DiagramResult z = alpha_and_chi(PolyMat<Cyclotomic>(3, 3), omega(3));
  CHECK(z.chi == Y * Y * Y);
  CHECK(z.commutes);

  Rng rng(13);
  for (int p : {2, 3})
    for (const auto& e : enumerate_E(p)) CHECK(alpha_and_chi(random_fixed(rng, p, 2 * p, e), e).commutes);
  CHECK_THROWS_AS(alpha_and_chi(random_polymat(rng, 2, 2), omega(2)), std::invalid_argument);
}

TEST_CASE("Hamiltonian rank") {
  Rng rng(15);
  CHECK(s_prime(2, 2) == 8);
  CHECK(s_prime(2, 1) == 5);
  for (int t = 0; t < 10; ++t) {
    CHECK(hamiltonian_rank(omega(2), 2, 2, random_generic_fixed(rng, 2, 4, omega(2))) == 8);
    CHECK(hamiltonian_rank(omega(2), 2, 1, random_generic_fixed(rng, 2, 2, omega(2))) == 5);
    CHECK(hamiltonian_rank(omega(3), 3, 1, random_generic_fixed(rng, 3, 3, omega(3))) == s_prime(3, 1));
  }
  // coincident diagonal entries in the constant term cost one Hamiltonian
  PolyMat<Cyclotomic> degenerate = random_generic_fixed(rng, 2, 2, omega(2));
  degenerate.set(1, 1, 0, degenerate.at(0, 0, 0));
  CHECK(hamiltonian_rank(omega(2), 2, 1, degenerate) < 5);
  CHECK(hamiltonian_rank(omega(2), 2, 2, PolyMat<Cyclotomic>(2, 4)) < 8);
}

TEST_CASE("irreducibility corpus") {
  const auto entries = irreducibility_corpus();
  REQUIRE(entries.size() == 10);
  for (const auto& entry : entries) {
    CAPTURE(entry.label);
    CurveTruth truth = CurveTruth::Undecided;
    if (!entry.factors.empty()) {
      Curve prod = C(1);
      for (const auto& f : entry.factors) prod = prod * f;
      REQUIRE(prod == entry.curve);
      truth = CurveTruth::Reducible;
    } else {
      truth = curve_oracle(entry.curve);
    }
    REQUIRE(truth != CurveTruth::Undecided);

    const MonodromyResult m = monodromy(entry.curve);
    if (truth == CurveTruth::Reducible) {
      CHECK(m.verdict == Verdict::Reducible);
      CHECK(m.orbits.size() >= 2);
      // any exhibited factor must divide exactly
      if (m.factor) {
        CHECK(m.factor->deg_y() >= 1);
        CHECK(m.factor->deg_y() < entry.curve.deg_y());
      }
    } else {
      CHECK(m.verdict == Verdict::IrreducibleMonodromy);
      CHECK(m.orbits.size() == 1);
    }
    const CurveCert cert = irreducible_cert(entry.curve);
    if (truth == CurveTruth::Reducible)
      CHECK(cert.verdict == Verdict::Reducible);
    else
      CHECK(cert.verdict != Verdict::Reducible);
  }
}
