#include "laxcyc/symmetry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace laxcyc {

namespace {

int mod(long a, int p) { return static_cast<int>(((a % p) + p) % p); }

void require_prime(int p) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
}

void check_e(const EVector& e, int p) {
  if (static_cast<int>(e.size()) != p)
    throw std::invalid_argument("e has length " + std::to_string(e.size()) + ", expected " + std::to_string(p));
}

// Largest cyclic rotation of mu in lexicographic order.
std::vector<int> max_rotation(const std::vector<int>& mu) {
  const int p = static_cast<int>(mu.size());
  std::vector<int> best = mu, rot(p);
  for (int r = 1; r < p; ++r) {
    for (int t = 0; t < p; ++t) rot[t] = mu[(t + r) % p];
    if (rot > best) best = rot;
  }
  return best;
}

}  // namespace

EVector reduce_e(EVector e, int p) {
  for (auto& v : e) v = mod(v, p);
  return e;
}

EVector zero_e(int p) { return EVector(p, 0); }

EVector omega(int p) {
  EVector e(p);
  std::iota(e.begin(), e.end(), 0);
  return e;
}

std::vector<int> multiplicities(const EVector& e, int p) {
  std::vector<int> mu(p, 0);
  for (int v : e) ++mu[mod(v, p)];
  return mu;
}

EVector from_multiplicities(const std::vector<int>& mu) {
  EVector e;
  for (std::size_t t = 0; t < mu.size(); ++t) e.insert(e.end(), mu[t], static_cast<int>(t));
  return e;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

std::vector<EVector> enumerate_E(int p) {
  require_prime(p);
  std::vector<EVector> out;
  for (const auto& mu : compositions(p, p))
    if (max_rotation(mu) == mu) out.push_back(from_multiplicities(mu));
  return out;
}

std::size_t e_count_formula(int p) {
  require_prime(p);
  // C(2p-1, p-1)
  std::size_t binom = 1;
  for (int k = 1; k <= p - 1; ++k) binom = binom * static_cast<std::size_t>(p + k) / static_cast<std::size_t>(k);
  return (binom - 1) / static_cast<std::size_t>(p) + 1;
}

EVector canonicalize(const EVector& e, int p) {
  check_e(e, p);
  return from_multiplicities(max_rotation(multiplicities(e, p)));
}

bool admissible(const EVector& e, int p, int i, int j, int k) { return mod(static_cast<long>(k) - e[i] + e[j], p) == 0; }

int sigma_exponent(const EVector& e, int p, int i, int j, int k) { return mod(static_cast<long>(k) + e[j] - e[i], p); }

Mat<Cyclotomic> delta_matrix(const EVector& e, int p) {
  check_e(e, p);
  Mat<Cyclotomic> d(p, p);
  for (int i = 0; i < p; ++i) d(i, i) = Cyclotomic::zeta_pow(p, e[i]);
  return d;
}

PolyMat<Cyclotomic> tau(const PolyMat<Cyclotomic>& L) {
  const int p = L.p();
  PolyMat<Cyclotomic> out(p, L.q());
  for (int k = 0; k <= L.q(); ++k) out.coeff(k) = Cyclotomic::zeta_pow(p, k) * L.coeff(k);
  return out;
}

PolyMat<Cyclotomic> sigma_action(const EVector& e, const PolyMat<Cyclotomic>& L) {
  const int p = L.p();
  check_e(e, p);
  PolyMat<Cyclotomic> out(p, L.q());
  for (int k = 0; k <= L.q(); ++k)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        const Cyclotomic& v = L.coeff(k)(i, j);
        if (!v.is_zero()) out.set(i, j, k, Cyclotomic::zeta_pow(p, sigma_exponent(e, p, i, j, k)) * v);
      }
  return out;
}

bool is_fixed(const PolyMat<Cyclotomic>& L, const EVector& e) {
  check_e(e, L.p());
  for (int k = 0; k <= L.q(); ++k)
    for (int i = 0; i < L.p(); ++i)
      for (int j = 0; j < L.p(); ++j)
        if (!admissible(e, L.p(), i, j, k) && !L.coeff(k)(i, j).is_zero()) return false;
  return true;
}

FixedBasis fixed_basis(int p, int d, const EVector& e) {
  if (p < 1 || d < 0) throw std::invalid_argument("fixed_basis needs p >= 1 and d >= 0");
  check_e(e, p);
  FixedBasis fb{p, d, reduce_e(e, p), {}};
  for (int k = 0; k <= d; ++k)
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (admissible(fb.e, p, i, j, k)) fb.basis.push_back({i, j, k});
  return fb;
}

namespace {

// Returns lambda^g where g = gcd of the exponents, by extended Euclid on
// (exponent, value) pairs with value = lambda^exponent.
std::pair<int, Cyclotomic> gcd_power(std::vector<std::pair<int, Cyclotomic>> pw) {
  std::pair<int, Cyclotomic> acc = pw.front();
  for (std::size_t n = 1; n < pw.size(); ++n) {
    std::pair<int, Cyclotomic> a = acc, b = pw[n];
    while (b.first != 0) {
      const int qt = a.first / b.first;
      Cyclotomic bq = b.second.pow(static_cast<unsigned>(qt));
      std::pair<int, Cyclotomic> r{a.first - qt * b.first, a.second / bq};
      a = b;
      b = r;
    }
    acc = a;
  }
  return acc;
}

}  // namespace

EVector classify_torsion(const Mat<Cyclotomic>& delta, int p) {
  require_prime(p);
  if (delta.rows() != p || delta.cols() != p) throw std::invalid_argument("torsion representative must be p x p");
  const Mat<Cyclotomic> power = delta.pow(static_cast<unsigned>(p));
  const Cyclotomic c = power(0, 0);
  if (c.is_zero() || power != c * Mat<Cyclotomic>::identity(p))
    throw NotTorsionError("matrix is not p-torsion in PGL_p (its p-th power is not a non-zero scalar)");

  // Characteristic polynomial of delta.
  std::vector<std::vector<Poly<Cyclotomic>>> m(p, std::vector<Poly<Cyclotomic>>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m[i][j] = i == j ? Poly<Cyclotomic>{-delta(i, j), Cyclotomic(1)} : Poly<Cyclotomic>(-delta(i, j));
  const Poly<Cyclotomic> chi = determinant(m);

  // delta is diagonalizable with eigenvalues lambda * zeta^t (multiplicity
  // mu_t), so chi(y) = lambda^p F_mu(y / lambda), F_mu = prod (z - zeta^t)^mu_t.
  for (const auto& mu : compositions(p, p)) {
    Poly<Cyclotomic> f(Cyclotomic(1));
    for (int t = 0; t < p; ++t)
      for (int r = 0; r < mu[t]; ++r) f = f * Poly<Cyclotomic>{-Cyclotomic::zeta_pow(p, t), Cyclotomic(1)};
    bool ok = true;
    std::vector<std::pair<int, Cyclotomic>> pw;
    for (int r = 0; r < p && ok; ++r) {
      const Cyclotomic fr = f.coeff(r), ar = chi.coeff(r);
      if (fr.is_zero()) {
        ok = ar.is_zero();
      } else if (ar.is_zero()) {
        ok = false;
      } else {
        pw.emplace_back(p - r, ar / fr);
      }
    }
    if (!ok) continue;
    if (!(pw.front().second == c)) continue;  // a_0 / f_0 must be lambda^p
    const auto [g, lam_g] = gcd_power(pw);
    if (g == 1) {
      for (int r = 0; r < p && ok; ++r) ok = chi.coeff(r) == f.coeff(r) * lam_g.pow(static_cast<unsigned>(p - r));
    }
    if (ok) return canonicalize(from_multiplicities(mu), p);
  }
  throw std::logic_error("torsion classification found no matching eigenvalue pattern");
}

EVector classify_torsion_float(const Mat<Complex>& delta, int p, double tol) {
  require_prime(p);
  if (delta.rows() != p || delta.cols() != p) throw std::invalid_argument("torsion representative must be p x p");
  // Rounding in delta^p scales with |delta|^p, not with |delta^p|: a badly
  // conditioned conjugate of a small torsion element has huge entries.
  double norm = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) norm = std::max(norm, std::abs(delta(i, j)));
  if (norm == 0.0) throw NotTorsionError("p-th power is singular");

  Eigen::MatrixXcd a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = delta(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue computation failed");
  Complex c(0.0);
  for (int i = 0; i < p; ++i) c += std::pow(solver.eigenvalues()(i), p);
  c /= static_cast<double>(p);
  if (std::pow(std::abs(c), 1.0 / p) <= tol * norm) throw NotTorsionError("p-th power is singular");

  const Mat<Complex> power = delta.pow(static_cast<unsigned>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (std::abs(power(i, j) - (i == j ? c : Complex(0))) > tol * std::pow(norm, p))
        throw NotTorsionError("matrix is not p-torsion in PGL_p (its p-th power is not scalar)");

  const Complex root = std::pow(c, 1.0 / p);
  EVector e(p);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < p; ++i) {
    const Complex z = solver.eigenvalues()(i) / root;
    const long t = std::lround(std::arg(z) * p / two_pi);
    e[i] = mod(t, p);
    if (std::abs(z - std::polar(1.0, two_pi * e[i] / p)) > 1e-6)
      throw NotTorsionError("rescaled eigenvalue is not a p-th root of unity");
  }
  return canonicalize(e, p);
}

std::string to_string(ConjugatorStatus s) {
  switch (s) {
    case ConjugatorStatus::Found:
      return "Found";
    case ConjugatorStatus::NotSymmetric:
      return "NotSymmetric";
    case ConjugatorStatus::AmbiguousStabilizer:
      return "AmbiguousStabilizer";
    case ConjugatorStatus::SingularSolution:
      return "SingularSolution";
  }
  return "?";
}

ConjugatorResult conjugator(const PolyMat<Cyclotomic>& L) {
  const int p = L.p();
  require_prime(p);
  const int n = p * p;
  Mat<Cyclotomic> sys(n * (L.q() + 1), n);
  for (int k = 0; k <= L.q(); ++k) {
    const Mat<Cyclotomic>& Lk = L.coeff(k);
    const Cyclotomic z = Cyclotomic::zeta_pow(p, k);
    for (int r = 0; r < p; ++r)
      for (int s = 0; s < p; ++s) {
        const int row = k * n + r * p + s;
        // (zeta^k L_k X - X L_k)_{rs}
        for (int c = 0; c < p; ++c) {
          if (!Lk(r, c).is_zero()) sys(row, c * p + s) += z * Lk(r, c);
          if (!Lk(c, s).is_zero()) sys(row, r * p + c) -= Lk(c, s);
        }
      }
  }
  const auto ker = kernel(sys);
  ConjugatorResult res;
  res.kernel_dim = static_cast<int>(ker.size());
  if (ker.empty()) {
    res.status = ConjugatorStatus::NotSymmetric;
    return res;
  }
  if (ker.size() > 1) {
    res.status = ConjugatorStatus::AmbiguousStabilizer;
    return res;
  }
  const auto& v = ker.front();
  Cyclotomic lead;
  for (const auto& x : v)
    if (!x.is_zero()) {
      lead = x;
      break;
    }
  const Cyclotomic inv = lead.inverse();
  Mat<Cyclotomic> g(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) g(a, b) = inv * v[a * p + b];
  res.g = g;
  if (determinant(g).is_zero()) {
    res.status = ConjugatorStatus::SingularSolution;
    return res;
  }
  res.status = ConjugatorStatus::Found;
  res.e = classify_torsion(g, p);
  return res;
}

ConjugatorFloatResult conjugator_float(const PolyMat<Complex>& L, double gap) {
  const int p = L.p();
  require_prime(p);
  const int n = p * p;
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(n * (L.q() + 1), n);
  for (int k = 0; k <= L.q(); ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
    for (int r = 0; r < p; ++r)
      for (int s = 0; s < p; ++s)
        for (int c = 0; c < p; ++c) {
          sys(k * n + r * p + s, c * p + s) += z * L.coeff(k)(r, c);
          sys(k * n + r * p + s, r * p + c) -= L.coeff(k)(c, s);
        }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  ConjugatorFloatResult res;
  res.singular_values.assign(sv.data(), sv.data() + sv.size());
  // A system with fewer rows than unknowns still has n - rows null directions.
  int null = n - static_cast<int>(sv.size());
  const double top = sv.size() ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= gap * std::max(top, 1.0)) ++null;
  res.kernel_dim = null;
  if (null == 0) {
    res.status = ConjugatorStatus::NotSymmetric;
    return res;
  }
  if (null > 1) {
    res.status = ConjugatorStatus::AmbiguousStabilizer;
    return res;
  }
  const Eigen::VectorXcd v = svd.matrixV().col(n - 1);
  int lead = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(v(i)) > 1e-6) {
      lead = i;
      break;
    }
  Mat<Complex> g(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) g(a, b) = v(a * p + b) / v(lead);
  res.g = g;
  Eigen::MatrixXcd ge(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) ge(a, b) = g(a, b);
  if (std::abs(ge.determinant()) < gap) {
    res.status = ConjugatorStatus::SingularSolution;
    return res;
  }
  res.status = ConjugatorStatus::Found;
  res.e = classify_torsion_float(g, p, 1e-6);
  return res;
}

CentralizerData centralizer_data(const EVector& e, int p) {
  check_e(e, p);
  const EVector r = reduce_e(e, p);
  CentralizerData cd;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (r[i] == r[j])
        cd.t0.emplace_back(i, j);
      else if (r[i] < r[j])
        cd.tplus.emplace_back(i, j);
      else
        cd.tminus.emplace_back(i, j);
    }
  for (const auto& [i, j] : cd.t0)
    if (i != 0 || j != 0) cd.lie_basis.push_back(Mat<Cyclotomic>::unit(p, i, j));
  return cd;
}

}  // namespace laxcyc
