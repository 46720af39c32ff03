#include "laxcyc/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace laxcyc {

namespace {

bool squarefree(const Poly<Cyclotomic>& f) {
  if (f.degree() < 1) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

int distinct_roots(const Poly<Cyclotomic>& f) {
  if (f.degree() < 1) return 0;
  return f.degree() - gcd(f, f.derivative()).degree();
}

bool is_monic_in_y(const Curve& P) {
  if (P.deg_y() < 1) return false;
  const Poly<Cyclotomic> lc = P.ycoeff(P.deg_y());
  return lc.degree() == 0 && lc.coeffs()[0] == Cyclotomic(1);
}

bool rational_coefficients(const Curve& P) {
  for (const auto& yc : P.nested().coeffs())
    for (const auto& c : yc.coeffs())
      if (!c.is_rational()) return false;
  return true;
}

}  // namespace

bool v_membership(const Curve& P, int p, int d) {
  if (P.deg_y() != p || !is_monic_in_y(P)) return false;
  for (int i = 1; i <= p; ++i)
    if (P.ycoeff(p - i).degree() > i * d) return false;
  return true;
}

std::optional<Curve> quotient_Q(const Curve& P, int p) {
  std::vector<Poly<Cyclotomic>> ys;
  for (const auto& c : P.nested().coeffs()) {
    auto r = deflate(c, p);
    if (!r) return std::nullopt;
    ys.push_back(*r);
  }
  return Curve::from_ycoeffs(std::move(ys));
}

GenusData genus(int p, int d) {
  return GenusData{p, d, static_cast<long>(p - 1) * (static_cast<long>(p) * d - 2) / 2};
}

bool rh_consistency(int p, int dprime) {
  const long gP = genus(p, p * dprime).genus;
  const long gQ = genus(p, dprime).genus;
  return 2 * gP - 2 == p * (2 * gQ - 2) + 2L * p * (p - 1);
}

SplFlags spl_cert(const Curve& Q, int p, int dprime) {
  if (Q.deg_y() != p || !is_monic_in_y(Q)) throw std::invalid_argument("Q must be monic of degree p in y");
  SplFlags f;
  f.q0 = Q.eval_x(Cyclotomic(0));
  std::vector<Cyclotomic> inf(p + 1, Cyclotomic(0));
  for (int i = 0; i <= p; ++i) inf[p - i] = Q.ycoeff(p - i).coeff(i * dprime);
  f.qinf = Poly<Cyclotomic>(std::move(inf));
  f.q0_squarefree = squarefree(f.q0);
  f.qinf_squarefree = f.qinf.degree() == p && squarefree(f.qinf);
  return f;
}

Poly<Cyclotomic> discriminant_y(const Curve& P) {
  const int n = P.deg_y();
  if (n < 1) throw std::invalid_argument("discriminant of a curve of y-degree < 1");
  if (n == 1) return Poly<Cyclotomic>(Cyclotomic(1));
  const Curve D = P.dy();
  const int m = n - 1;
  using PC = Poly<Cyclotomic>;
  std::vector<std::vector<PC>> syl(n + m, std::vector<PC>(n + m));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) syl[r][r + k] = P.ycoeff(n - k);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) syl[m + r][r + k] = D.ycoeff(m - k);
  PC res = determinant(syl);
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return exact_div(res, P.ycoeff(n));
}

std::vector<Complex> poly_roots(const Poly<Complex>& f) {
  const int n = f.degree();
  if (n < 1) return {};
  const Complex lc = f.leading();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.coeffs()[i] / lc;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const Poly<Complex> df = f.derivative();
  for (auto& z : out) {
    for (int it = 0; it < 3; ++it) {
      const Complex d = df(z);
      if (std::abs(d) == 0.0) break;
      const Complex step = f(z) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
  }
  return out;
}

BranchData branch_points(const Curve& Q, int p, int dprime) {
  BranchData b;
  b.discriminant = discriminant_y(Q);
  if (b.discriminant.is_zero()) throw std::domain_error("discriminant vanishes identically (repeated factor)");
  const Poly<Cyclotomic> simple =
      b.discriminant.degree() > 0 ? exact_div(b.discriminant, gcd(b.discriminant, b.discriminant.derivative()))
                                  : b.discriminant;
  b.finite_branch_points = poly_roots(simple.map([](const Cyclotomic& c) { return c.embed(); }));
  b.branch_at_zero = b.discriminant.coeff(0).is_zero();
  const SplFlags f = spl_cert(Q, p, dprime);
  b.fiber_over_zero = distinct_roots(f.q0);
  b.fiber_over_infinity = distinct_roots(f.qinf);
  b.fq_branch_count = b.fiber_over_zero + b.fiber_over_infinity;
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::IrreducibleExact:
      return "IrreducibleExact";
    case Verdict::IrreducibleMonodromy:
      return "IrreducibleMonodromy";
    case Verdict::Reducible:
      return "Reducible";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monodromy

namespace {

constexpr double kCollision = 1e-8;
constexpr int kCircleSteps = 256;

struct ComplexCurve {
  std::vector<Poly<Complex>> ys;  // y-coefficients, monic
  Poly<Complex> at(Complex x) const {
    std::vector<Complex> c;
    c.reserve(ys.size());
    for (const auto& p : ys) c.push_back(p(x));
    return Poly<Complex>(std::move(c));
  }
};

double min_separation(const std::vector<Complex>& r) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = a + 1; b < r.size(); ++b) m = std::min(m, std::abs(r[a] - r[b]));
  return m;
}

// Matches each old root to its nearest new root; empty on ambiguity.
std::vector<Complex> match(const std::vector<Complex>& old_roots, const std::vector<Complex>& fresh) {
  const double sep = min_separation(fresh);
  std::vector<Complex> out(old_roots.size());
  std::vector<bool> used(fresh.size(), false);
  for (std::size_t a = 0; a < old_roots.size(); ++a) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < fresh.size(); ++b) {
      const double d = std::abs(old_roots[a] - fresh[b]);
      if (d < bd) {
        bd = d;
        best = b;
      }
    }
    if (used[best] || (fresh.size() > 1 && bd > 0.25 * sep)) return {};
    used[best] = true;
    out[a] = fresh[best];
  }
  return out;
}

struct TrackError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Continues the roots along path(t), t in [0, 1], with adaptive steps
// starting from 1 / steps.
std::vector<Complex> track(const ComplexCurve& C, const std::function<Complex(double)>& path,
                           std::vector<Complex> roots, int steps) {
  const double max_dt = 1.0 / steps;
  double t = 0.0, dt = max_dt;
  while (t < 1.0) {
    const double tn = std::min(1.0, t + dt);
    const std::vector<Complex> fresh = poly_roots(C.at(path(tn)));
    if (fresh.size() > 1 && min_separation(fresh) < kCollision) {
      std::ostringstream os;
      os << "root collision near x = " << path(tn);
      throw TrackError(os.str());
    }
    std::vector<Complex> m = match(roots, fresh);
    if (m.empty()) {
      dt /= 2;
      if (dt < 1e-10) throw TrackError("path tracking step underflow");
      continue;
    }
    roots = std::move(m);
    t = tn;
    dt = std::min(max_dt, dt * 2);
  }
  return roots;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

Complex choose_base(const std::vector<Complex>& B) {
  double R = 1.0;
  for (const auto& b : B) R = std::max(R, std::abs(b));
  const Complex jitter(0.0137 * R, 0.0291 * R);
  Complex best = jitter;
  double best_score = -1.0;
  const int k = 8;
  for (int a = -k; a <= k; ++a)
    for (int c = -k; c <= k; ++c) {
      const Complex cand = Complex(1.5 * R * a / k, 1.5 * R * c / k) + jitter;
      double score = std::numeric_limits<double>::infinity();
      for (const auto& b : B) score = std::min(score, std::abs(cand - b));
      for (std::size_t j = 0; j < B.size(); ++j)
        for (std::size_t l = 0; l < B.size(); ++l)
          if (j != l) score = std::min(score, segment_distance(B[j], cand, B[l]));
      if (score > best_score) {
        best_score = score;
        best = cand;
      }
    }
  return best;
}

std::optional<Rational> round_rational(double v) {
  // Continued-fraction approximation with denominators up to 10^4.
  if (!std::isfinite(v) || std::abs(v) > 1e12) return std::nullopt;
  const double tol = 1e-6 * std::max(1.0, std::abs(v));
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(x);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 10000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / k1 - v) < tol) {
      Rational r(h1, k1);
      r.canonicalize();
      return r;
    }
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

// Polynomial with the given values at base + rho * w^s (w = e^{2 pi i / N}).
Poly<Complex> interpolate_circle(const std::vector<Complex>& values, Complex base, double rho) {
  const int N = static_cast<int>(values.size());
  std::vector<Complex> c(N);
  for (int m = 0; m < N; ++m) {
    Complex acc(0.0, 0.0);
    for (int s = 0; s < N; ++s) acc += values[s] * std::polar(1.0, -2.0 * M_PI * s * m / N);
    c[m] = acc / (static_cast<double>(N) * std::pow(rho, m));
  }
  Poly<Complex> out;
  const Poly<Complex> shift({-base, Complex(1.0, 0.0)});
  for (int m = N - 1; m >= 0; --m) out = out * shift + Poly<Complex>(c[m]);
  return out;
}

std::optional<Curve> factor_from_orbit(const Curve& P, const ComplexCurve& C, const std::vector<int>& orbit,
                                       Complex base, const std::vector<Complex>& base_roots, double clearance) {
  if (!rational_coefficients(P)) return std::nullopt;
  const int n = P.deg_y();
  double rho_max = 0.0;
  for (int j = 0; j < n; ++j) {
    const int dj = P.ycoeff(j).degree();
    if (dj >= 0) rho_max = std::max(rho_max, static_cast<double>(dj) / (n - j));
  }
  const int m = static_cast<int>(orbit.size());
  const int D = static_cast<int>(std::ceil(m * rho_max - 1e-9));
  const int N = D + 1;
  const double rho = 0.5 * clearance;
  std::vector<std::vector<Complex>> esym(m + 1, std::vector<Complex>(N));
  for (int s = 0; s < N; ++s) {
    const Complex target = base + std::polar(rho, 2.0 * M_PI * s / N);
    const auto roots = track(C, [&](double t) { return base + t * (target - base); }, base_roots, 64);
    std::vector<Complex> e(m + 1, Complex(0.0, 0.0));
    e[0] = 1.0;
    for (int idx : orbit)
      for (int k = m; k >= 1; --k) e[k] += e[k - 1] * roots[idx];
    for (int k = 0; k <= m; ++k) esym[k][s] = e[k];
  }
  // F = y^m - e1 y^{m-1} + e2 y^{m-2} - ...
  std::vector<Poly<Cyclotomic>> ys(m + 1);
  for (int k = 0; k <= m; ++k) {
    const Poly<Complex> ck = interpolate_circle(esym[k], base, rho);
    std::vector<Cyclotomic> exact;
    for (const auto& z : ck.coeffs()) {
      if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) return std::nullopt;
      auto r = round_rational(z.real());
      if (!r) return std::nullopt;
      exact.emplace_back(k % 2 == 0 ? *r : Rational(-*r));
    }
    ys[m - k] = Poly<Cyclotomic>(std::move(exact));
  }
  Curve F = Curve::from_ycoeffs(std::move(ys));
  if (F.deg_y() != m) return std::nullopt;
  const auto [q, r] = P.nested().divmod(F.nested());
  if (!r.is_zero()) return std::nullopt;
  return F;
}

}  // namespace

MonodromyResult monodromy(const Curve& P) {
  MonodromyResult out;
  if (!is_monic_in_y(P)) {
    out.diagnostic = "curve is not monic in y";
    return out;
  }
  const int n = P.deg_y();
  if (n == 1) {
    out.verdict = Verdict::IrreducibleMonodromy;
    out.orbits = {{0}};
    return out;
  }
  const Poly<Cyclotomic> disc = discriminant_y(P);
  if (disc.is_zero()) {
    out.verdict = Verdict::Reducible;
    out.diagnostic = "discriminant vanishes identically";
    return out;
  }
  ComplexCurve C;
  for (const auto& yc : P.nested().coeffs()) C.ys.push_back(yc.map([](const Cyclotomic& c) { return c.embed(); }));
  // squarefree part, so that every branch point is a simple root
  const Poly<Cyclotomic> simple = disc.degree() > 0 ? exact_div(disc, gcd(disc, disc.derivative())) : disc;
  const std::vector<Complex> B = poly_roots(simple.map([](const Cyclotomic& c) { return c.embed(); }));
  out.base_point = choose_base(B);
  const Complex base = out.base_point;

  try {
    const std::vector<Complex> base_roots = poly_roots(C.at(base));
    if (min_separation(base_roots) < kCollision) throw TrackError("base fibre is degenerate");
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };

    for (std::size_t k = 0; k < B.size(); ++k) {
      double nearest = std::abs(base - B[k]);
      for (std::size_t j = 0; j < B.size(); ++j)
        if (j != k) nearest = std::min(nearest, std::abs(B[j] - B[k]));
      const double r = 0.4 * nearest;
      const Complex u = (base - B[k]) / std::abs(base - B[k]);
      const Complex entry = B[k] + r * u;
      const double theta0 = std::arg(u);
      const double len = std::abs(entry - base);
      const int tail_steps = std::max(64, static_cast<int>(std::ceil(16.0 * len / r)));

      auto roots = track(C, [&](double t) { return base + t * (entry - base); }, base_roots, tail_steps);
      roots = track(C, [&](double t) { return B[k] + std::polar(r, theta0 + 2.0 * M_PI * t); }, roots, kCircleSteps);
      roots = track(C, [&](double t) { return entry + t * (base - entry); }, roots, tail_steps);

      if (match(roots, base_roots).empty()) throw TrackError("loop did not close onto the base fibre");
      std::vector<int> perm;
      for (int a = 0; a < n; ++a) {
        int best = 0;
        for (int b = 1; b < n; ++b)
          if (std::abs(roots[a] - base_roots[b]) < std::abs(roots[a] - base_roots[best])) best = b;
        perm.push_back(best);
        parent[find(a)] = find(best);
      }
      out.permutations.push_back(perm);
    }

    std::map<int, std::vector<int>> groups;
    for (int a = 0; a < n; ++a) groups[find(a)].push_back(a);
    for (auto& [root, g] : groups) out.orbits.push_back(g);
    if (out.orbits.size() == 1) {
      out.verdict = Verdict::IrreducibleMonodromy;
    } else {
      out.verdict = Verdict::Reducible;
      double clearance = std::numeric_limits<double>::infinity();
      for (const auto& b : B) clearance = std::min(clearance, std::abs(base - b));
      if (B.empty()) clearance = 1.0;
      out.factor = factor_from_orbit(P, C, out.orbits.front(), base, base_roots, clearance);
      out.diagnostic = out.factor ? "orbit factor verified by exact division" : "non-transitive monodromy";
    }
  } catch (const TrackError& err) {
    out.verdict = Verdict::Unknown;
    out.permutations.clear();
    out.orbits.clear();
    out.diagnostic = err.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact criteria

namespace {

// Rational root of a polynomial with rational coefficients, if any; nullopt
// in the first slot means the search was skipped (coefficients too large).
std::optional<bool> has_rational_root(const std::vector<Rational>& c) {
  mpz_class den = 1;
  for (const auto& v : c) den = lcm(den, v.get_den());
  std::vector<mpz_class> a;
  for (const auto& v : c) a.push_back(mpz_class(v * den));
  if (a.front() == 0) return true;
  const mpz_class a0 = abs(a.front()), an = abs(a.back());
  const mpz_class limit = 1000000000000L;
  if (a0 > limit || an > limit) return std::nullopt;
  auto divisors = [](const mpz_class& v) {
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        out.push_back(d);
        if (d * d != v) out.push_back(v / d);
      }
    return out;
  };
  const auto num = divisors(a0), dens = divisors(an);
  for (const auto& u : num)
    for (const auto& w : dens)
      for (int sign : {1, -1}) {
        Rational r(sign * u, w);
        r.canonicalize();
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + *it;
        if (acc == 0) return true;
      }
  return false;
}

}  // namespace

CurveCert exact_irreducibility(const Curve& P) {
  CurveCert cert;
  cert.monic = is_monic_in_y(P);
  if (!cert.monic) {
    cert.diagnostic = "curve is not monic in y";
    return cert;
  }
  const int n = P.deg_y();
  if (n == 1) {
    cert.exact_verdict = Verdict::IrreducibleExact;
    cert.exact_method = "degree one in y";
  } else if (discriminant_y(P).is_zero()) {
    cert.exact_verdict = Verdict::Reducible;
    cert.exact_method = "identically zero discriminant (repeated factor)";
  } else if (P.deg_x() == 1) {
    Poly<Cyclotomic> A, Bx;
    for (int j = 0; j <= n; ++j) {
      A.set_coeff(j, P.coeff(0, j));
      Bx.set_coeff(j, P.coeff(1, j));
    }
    const Poly<Cyclotomic> g = gcd(A, Bx);
    if (g.degree() >= 1) {
      cert.exact_verdict = Verdict::Reducible;
      cert.exact_method = "linear in x with common factor " + poly_to_string(g, "y");
      std::vector<Poly<Cyclotomic>> ys;
      for (const auto& c : g.coeffs()) ys.emplace_back(c);
      cert.factor = Curve::from_ycoeffs(std::move(ys));
    } else {
      cert.exact_verdict = Verdict::IrreducibleExact;
      cert.exact_method = "linear in x with coprime coefficients";
    }
  } else if ((n == 2 || n == 3) && rational_coefficients(P)) {
    for (int x0 : {0, 1, -1, 2, -2, 3}) {
      const Poly<Cyclotomic> f = P.eval_x(Cyclotomic(x0));
      std::vector<Rational> c;
      for (int j = 0; j <= n; ++j) c.push_back(f.coeff(j).rational());
      const auto root = has_rational_root(c);
      if (root && !*root) {
        cert.exact_verdict = Verdict::IrreducibleExact;
        cert.exact_method = "specialization at x = " + std::to_string(x0) + " has no rational root";
        break;
      }
    }
  }
  cert.verdict = cert.exact_verdict;
  return cert;
}

CurveCert irreducible_cert(const Curve& P, bool run_monodromy) {
  CurveCert cert = exact_irreducibility(P);
  if (!cert.monic || !run_monodromy) return cert;
  const MonodromyResult m = monodromy(P);
  cert.monodromy_verdict = m.verdict;
  if (cert.exact_verdict == Verdict::Unknown) {
    cert.verdict = m.verdict;
    if (m.factor) cert.factor = m.factor;
  }
  if (!m.diagnostic.empty()) cert.diagnostic = m.diagnostic;
  return cert;
}

// ---------------------------------------------------------------------------

DiagramResult alpha_and_chi(const PolyMat<Cyclotomic>& L, const EVector& e) {
  if (!is_fixed(L, e)) throw std::invalid_argument("L is not fixed under sigma_e");
  const int p = L.p();
  DiagramResult r;
  std::vector<Poly<Cyclotomic>> f;
  PolyMat<Cyclotomic> power = PolyMat<Cyclotomic>::identity(p);
  for (int i = 1; i <= p; ++i) {
    power = power * L;
    auto t = deflate(power.trace(), p);
    if (!t) throw std::logic_error("Tr L^" + std::to_string(i) + " is not a polynomial in x^p");
    f.push_back(*t);
    r.alpha.push_back(scale(*t, Rational(1, i)));
  }
  auto chi = quotient_Q(char_poly(L), p);
  if (!chi) throw std::logic_error("characteristic polynomial is not a polynomial in x^p");
  r.chi = *chi;
  const auto es = newton_convert(f);
  std::vector<Poly<Cyclotomic>> ys(p + 1);
  ys[p] = Poly<Cyclotomic>(Cyclotomic(1));
  for (int k = 1; k <= p; ++k) ys[p - k] = (k % 2 == 0) ? es[k - 1] : -es[k - 1];
  r.psi_of_alpha = Curve::from_ycoeffs(std::move(ys));
  r.commutes = r.psi_of_alpha == r.chi;
  return r;
}

std::vector<CorpusCurve> irreducibility_corpus() {
  using P = Poly<Cyclotomic>;
  const Curve X = Curve::from_ycoeffs({P::x()});
  const Curve Y = Curve::from_ycoeffs({P(0), P(1)});
  auto C = [](int c) { return Curve::from_ycoeffs({P(c)}); };
  auto product = [&](std::vector<Curve> fs) {
    Curve out = C(1);
    for (const auto& f : fs) out = out * f;
    return out;
  };
  std::vector<CorpusCurve> out;
  auto reducible = [&](const char* label, std::vector<Curve> fs) { out.push_back({label, product(fs), fs}); };
  auto irreducible = [&](const char* label, Curve c) { out.push_back({label, std::move(c), {}}); };
  reducible("R1", {Y - X, Y + X});
  reducible("R2", {Y - X * X - C(1), Y + X});
  reducible("R3", {Y * Y - X, Y - X - C(2)});
  reducible("R4", {Y - X, Y - C(2) * X, Y + C(1)});
  irreducible("I1", Y * Y - X * X * Y - X * X);
  irreducible("I2", Y * Y - X * X - X - C(1));
  irreducible("I3", Y * Y * Y - X);
  irreducible("I4", Y * Y - X * X * X + X);
  irreducible("I5", Y * Y * Y + X * Y + X * X + C(1));
  irreducible("I6", Y * Y - X * Y - X * X * X - C(1));
  return out;
}

int s_prime(int p, int dprime) { return p * (p + 1) * dprime / 2 + p; }

int hamiltonian_rank(const EVector& e, int p, int dprime, const PolyMat<Cyclotomic>& L) {
  const int d = p * dprime;
  if (L.p() != p || L.q() != d) throw std::invalid_argument("L must be a p x p matrix with degree bound p d'");
  if (!is_fixed(L, e)) throw std::invalid_argument("L is not fixed under sigma_e");
  const FixedBasis fb = fixed_basis(p, d, e);
  std::vector<PolyMat<Cyclotomic>> powers{PolyMat<Cyclotomic>::identity(p)};
  for (int i = 1; i < p; ++i) powers.push_back(powers.back() * L);
  Mat<Cyclotomic> J(s_prime(p, dprime), static_cast<int>(fb.dimension()));
  int row = 0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= (i + 1) * dprime; ++j, ++row)
      for (std::size_t c = 0; c < fb.dimension(); ++c) {
        const auto& [a, b, k] = fb.basis[c];
        // dH_{i,pj} / dl^k_ab = [x^{pj-k}] (L^i)_ba
        J(row, static_cast<int>(c)) = powers[i].at(b, a, p * j - k);
      }
  return rank(J);
}

}  // namespace laxcyc
