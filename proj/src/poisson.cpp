#include "laxcyc/poisson.hpp"

#include <sstream>
#include <stdexcept>

namespace laxcyc {

BracketSpec BracketSpec::single(int mu) {
  if (mu < 0) throw std::invalid_argument("bracket index must be non-negative");
  BracketSpec s;
  s.weights.assign(mu + 1, Rational(0));
  s.weights[mu] = 1;
  return s;
}

BracketSpec BracketSpec::phi(std::vector<Rational> coeffs) {
  BracketSpec s;
  s.weights = std::move(coeffs);
  while (!s.weights.empty() && sgn(s.weights.back()) == 0) s.weights.pop_back();
  return s;
}

bool BracketSpec::is_single() const {
  int nonzero = 0;
  for (const auto& w : weights)
    if (sgn(w) != 0) ++nonzero;
  return nonzero == 1 && weights[degree()] == 1;
}

int BracketSpec::mu() const {
  if (!is_single()) throw std::logic_error("bracket spec is not a single index");
  return degree();
}

int BracketSpec::degree() const {
  for (int k = static_cast<int>(weights.size()) - 1; k >= 0; --k)
    if (sgn(weights[k]) != 0) return k;
  return -1;
}

std::string BracketSpec::to_string() const {
  if (is_single()) return "mu=" + std::to_string(mu());
  std::ostringstream os;
  os << "phi=";
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (sgn(weights[k]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << laxcyc::to_string(weights[k]) << "*x^" << k;
  }
  if (first) os << "0";
  return os.str();
}

CoordFunction coord_bracket(const VarSpace& s, int i, int j, int k, int m, int n, int l, int mu) {
  int eta = 0;
  if (k < mu && l < mu)
    eta = 1;
  else if (k >= mu && l >= mu)
    eta = -1;
  const int t = k + l + 1 - mu;
  if (eta == 0 || t < 0 || t > s.q) return {};
  CoordFunction out;
  if (n == i) out += CoordFunction::var(s.id(m, j, t), Cyclotomic(eta));
  if (j == m) out -= CoordFunction::var(s.id(i, n, t), Cyclotomic(eta));
  return out;
}

const CoordFunction& BracketTable::coord(int a, int b) {
  auto& slot = cache_[static_cast<std::size_t>(a) * space_.count() + b];
  if (!slot) slot = compute(a, b);
  return *slot;
}

void BracketTable::store(int a, int b, CoordFunction f) {
  cache_[static_cast<std::size_t>(a) * space_.count() + b] = std::move(f);
}

LoopBracket::LoopBracket(VarSpace s, BracketSpec spec) : BracketTable(s), spec_(std::move(spec)) {
  if (spec_.degree() > s.q + 1) throw std::invalid_argument("bracket index exceeds q + 1");
}

CoordFunction LoopBracket::compute(int a, int b) {
  const VarSpace& s = space();
  CoordFunction out;
  for (int mu = 0; mu <= spec_.degree(); ++mu) {
    if (sgn(spec_.weights[mu]) == 0) continue;
    CoordFunction term = coord_bracket(s, s.row(a), s.col(a), s.power(a), s.row(b), s.col(b), s.power(b), mu);
    out += scale(term, spec_.weights[mu]);
  }
  return out;
}

bool admissible_var(const VarSpace& s, const EVector& e, int v) {
  return admissible(e, s.p, s.row(v), s.col(v), s.power(v));
}

CoordFunction sigma_pullback(const CoordFunction& f, const VarSpace& s, const EVector& e) {
  return f.rescale_vars([&](int v) {
    return Cyclotomic::zeta_pow(s.p, sigma_exponent(e, s.p, s.row(v), s.col(v), s.power(v)));
  });
}

CoordFunction restrict_to_fixed(const CoordFunction& f, const VarSpace& s, const EVector& e) {
  return f.restrict_to([&](int v) { return admissible_var(s, e, v); });
}

namespace {

void add_to(XYPoly& poly, int a, int b, const CoordFunction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = poly.emplace(std::make_pair(a, b), c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) poly.erase(it);
}

// <i> = i for 1 <= i <= p and p + i for -p <= i <= 0.
int bracket_angle(int i, int p) {
  if (i >= 1 && i <= p) return i;
  if (i >= -p && i <= 0) return p + i;
  throw std::logic_error("exponent bookkeeping out of range");
}

// Exact quotient by x^p - y^p.
XYPoly divide_xp_minus_yp(XYPoly num, int p) {
  XYPoly quo;
  while (!num.empty()) {
    auto it = std::prev(num.end());
    const auto [a, b] = it->first;
    if (a < p) break;
    const CoordFunction c = it->second;
    num.erase(it);
    add_to(quo, a - p, b, c);
    add_to(num, a - p, b + p, c);
  }
  if (!num.empty()) throw std::logic_error("numerator is not divisible by x^p - y^p");
  return quo;
}

}  // namespace

ReducedBracket::ReducedBracket(VarSpace s, EVector e, BracketSpec phi)
    : BracketTable(s), e_(reduce_e(std::move(e), s.p)), phi_(std::move(phi)) {
  if (static_cast<int>(e_.size()) != s.p) throw std::invalid_argument("e has the wrong length");
  if (phi_.degree() > s.q + 1) throw std::invalid_argument("deg phi exceeds q + 1");
  for (int mu = 0; mu <= phi_.degree(); ++mu)
    if (sgn(phi_.weights[mu]) != 0 && mu % s.p != 1 % s.p)
      throw std::invalid_argument("phi must have the form x * phit(x^p) (exponent " + std::to_string(mu) +
                                  " is not 1 mod p)");
}

void ReducedBracket::fill_block(int i, int j, int m, int n) {
  const VarSpace& s = space();
  const int p = s.p;
  auto b_entry = [&](int r, int c) {
    std::vector<std::pair<int, CoordFunction>> terms;
    for (int k = 0; k <= s.q; ++k)
      if (admissible(e_, p, r, c, k)) terms.emplace_back(k, CoordFunction::var(s.id(r, c, k)));
    return terms;
  };
  const int A = bracket_angle(e_[m] - e_[n], p);
  const int B = bracket_angle(e_[j] - e_[i] + 1, p);

  XYPoly num;
  // delta * [b(x) x^{p-A} y^{A-1} phi(y) - b(y) y^{B-1} x^{p-B} phi(x)]
  auto add_part = [&](int r, int c, int sign) {
    for (const auto& [k, var] : b_entry(r, c))
      for (int mu = 0; mu <= phi_.degree(); ++mu) {
        if (sgn(phi_.weights[mu]) == 0) continue;
        const CoordFunction w = scale(var, phi_.weights[mu] * sign);
        add_to(num, k + p - A, A - 1 + mu, w);
        add_to(num, p - B + mu, k + B - 1, -w);
      }
  };
  if (j == m) add_part(i, n, 1);
  if (i == n) add_part(m, j, -1);

  const XYPoly quo = divide_xp_minus_yp(std::move(num), p);
  for (const auto& [key, c] : quo)
    if (key.first > s.q || key.second > s.q) throw std::logic_error("reduced bracket quotient exceeds degree q");
  for (int k = 0; k <= s.q; ++k)
    for (int l = 0; l <= s.q; ++l) {
      auto it = quo.find({k, l});
      store(s.id(i, j, k), s.id(m, n, l), it == quo.end() ? CoordFunction() : it->second);
    }
}

CoordFunction ReducedBracket::compute(int a, int b) {
  const VarSpace& s = space();
  fill_block(s.row(a), s.col(a), s.row(b), s.col(b));
  return coord(a, b);
}

ExtensionBracket::ExtensionBracket(VarSpace s, EVector e, BracketSpec spec)
    : BracketTable(s), e_(reduce_e(std::move(e), s.p)), loop_(s, spec) {
  for (int mu = 0; mu <= spec.degree(); ++mu)
    if (sgn(spec.weights[mu]) != 0 && mu % s.p != 1 % s.p)
      throw std::invalid_argument("sigma is a Poisson map only for mu = 1 (mod p)");
}

CoordFunction ExtensionBracket::compute(int a, int b) {
  const VarSpace& s = space();
  CoordFunction orbit = CoordFunction::var(a), avg;
  for (int m = 1; m <= s.p; ++m) {
    orbit = sigma_pullback(orbit, s, e_);
    avg += orbit;
  }
  avg = scale(avg, Rational(1, s.p));
  return restrict_to_fixed(bracket(avg, CoordFunction::var(b), loop_), s, e_);
}

CoordFunction bracket(const CoordFunction& f, const CoordFunction& g, BracketTable& table) {
  CoordFunction out;
  if (f.is_constant() || g.is_constant()) return out;
  const auto gv = g.variables();
  std::vector<CoordFunction> dg;
  dg.reserve(gv.size());
  for (int b : gv) dg.push_back(g.derivative(b));
  for (int a : f.variables()) {
    CoordFunction inner;
    for (std::size_t t = 0; t < gv.size(); ++t) {
      const CoordFunction& ab = table.coord(a, gv[t]);
      if (!ab.is_zero()) inner += dg[t] * ab;
    }
    if (!inner.is_zero()) out += f.derivative(a) * inner;
  }
  return out;
}

CoordFunction jacobiator(const CoordFunction& a, const CoordFunction& b, const CoordFunction& c, BracketTable& table) {
  return bracket(bracket(a, b, table), c, table) + bracket(bracket(b, c, table), a, table) +
         bracket(bracket(c, a, table), b, table);
}

PolyMat<CoordFunction> symbolic_matrix(const VarSpace& s) {
  PolyMat<CoordFunction> L(s.p, s.q);
  for (int i = 0; i < s.p; ++i)
    for (int j = 0; j < s.p; ++j)
      for (int k = 0; k <= s.q; ++k) L.set(i, j, k, CoordFunction::var(s.id(i, j, k)));
  return L;
}

PolyMat<CoordFunction> symbolic_fixed_matrix(const VarSpace& s, const EVector& e) {
  PolyMat<CoordFunction> L(s.p, s.q);
  for (int i = 0; i < s.p; ++i)
    for (int j = 0; j < s.p; ++j)
      for (int k = 0; k <= s.q; ++k)
        if (admissible(e, s.p, i, j, k)) L.set(i, j, k, CoordFunction::var(s.id(i, j, k)));
  return L;
}

Cyclotomic evaluate(const CoordFunction& f, const PolyMat<Cyclotomic>& L) {
  const VarSpace s{L.p(), L.q()};
  return f.eval<Cyclotomic>([&](int v) { return L.at(s.row(v), s.col(v), s.power(v)); });
}

Complex evaluate(const CoordFunction& f, const PolyMat<Complex>& L) {
  const VarSpace s{L.p(), L.q()};
  return f.eval<Complex>([&](int v) { return L.at(s.row(v), s.col(v), s.power(v)); });
}

bool generating_identity_check(int p, int q, const BracketSpec& spec) {
  const VarSpace s{p, q};
  LoopBracket table(s, spec);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int m = 0; m < p; ++m)
        for (int n = 0; n < p; ++n) {
          XYPoly lhs;
          for (int k = 0; k <= q; ++k)
            for (int l = 0; l <= q; ++l) {
              const CoordFunction& c = table.coord(s.id(i, j, k), s.id(m, n, l));
              add_to(lhs, k + 1, l, c);
              add_to(lhs, k, l + 1, -c);
            }
          XYPoly rhs;
          for (int mu = 0; mu <= spec.degree(); ++mu) {
            if (sgn(spec.weights[mu]) == 0) continue;
            const Rational w = spec.weights[mu];
            for (int k = 0; k <= q; ++k) {
              if (j == m) {
                const CoordFunction v = scale(CoordFunction::var(s.id(i, n, k)), w);
                add_to(rhs, k, mu, v);
                add_to(rhs, mu, k, -v);
              }
              if (n == i) {
                const CoordFunction v = scale(CoordFunction::var(s.id(m, j, k)), w);
                add_to(rhs, k, mu, -v);
                add_to(rhs, mu, k, v);
              }
            }
          }
          if (lhs != rhs) return false;
        }
  return true;
}

bool auxiliary_identity_check(int q, int s) {
  if (s < 0 || s > q + 1) throw std::invalid_argument("auxiliary identity needs 0 <= s <= q + 1");
  auto xi = [&](int t) { return (t < 0 || t > q) ? CoordFunction() : CoordFunction::var(t); };
  XYPoly lhs;
  auto accumulate = [&](int k, int l, int sign) {
    const CoordFunction c = scale(xi(k + l + 1 - s), Rational(sign));
    add_to(lhs, k + 1, l, c);
    add_to(lhs, k, l + 1, -c);
  };
  for (int k = 0; k < s; ++k)
    for (int l = 0; l < s; ++l) accumulate(k, l, 1);
  for (int k = s; k <= q; ++k)
    for (int l = s; l <= q; ++l) accumulate(k, l, -1);
  XYPoly rhs;
  for (int t = 0; t <= q; ++t) {
    add_to(rhs, s, t, xi(t));
    add_to(rhs, t, s, -xi(t));
  }
  return lhs == rhs;
}

bool zeta_partial_fraction_check(int p, int l) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (l < 1 || l > p) throw std::invalid_argument("need 1 <= l <= p");
  using P = Poly<Cyclotomic>;
  auto root_factor = [&](int k) { return P{-Cyclotomic::zeta_pow(p, k), Cyclotomic(1)}; };
  P denom(Cyclotomic(1));
  for (int k = 1; k <= p; ++k) denom = denom * root_factor(k);
  P num;
  for (int k = 1; k <= p; ++k) num = num + Cyclotomic::zeta_pow(p, static_cast<long>(k) * l) * exact_div(denom, root_factor(k));
  const P tp_minus_1 = P::monomial(p, Cyclotomic(1)) - P(Cyclotomic(1));
  const P rhs_num = P::monomial(l - 1, Cyclotomic(p));
  return num * tp_minus_1 == rhs_num * denom;
}

bool is_poisson_automorphism(const EVector& e, int mu, int p, int q) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  const VarSpace s{p, q};
  LoopBracket table(s, BracketSpec::single(mu));
  for (int a = 0; a < s.count(); ++a) {
    const CoordFunction sa = sigma_pullback(CoordFunction::var(a), s, e);
    for (int b = 0; b < s.count(); ++b) {
      const CoordFunction sb = sigma_pullback(CoordFunction::var(b), s, e);
      if (bracket(sa, sb, table) != sigma_pullback(table.coord(a, b), s, e)) return false;
    }
  }
  return true;
}

PolyMat<Cyclotomic> hamiltonian_vf(const PolyMat<Cyclotomic>& L, int i, int j, int mu) {
  const VarSpace s{L.p(), L.q()};
  if (mu < 0 || mu > s.q + 1) throw std::invalid_argument("need 0 <= mu <= q + 1");
  const CoordFunction H = hamiltonian(symbolic_matrix(s), i, j - 1 + mu);
  LoopBracket table(s, BracketSpec::single(mu));
  PolyMat<Cyclotomic> out(s.p, s.q);
  for (int v = 0; v < s.count(); ++v) {
    const CoordFunction f = -bracket(CoordFunction::var(v), H, table);
    out.set(s.row(v), s.col(v), s.power(v), evaluate(f, L));
  }
  return out;
}

PolyMat<Cyclotomic> reduced_hamiltonian_vf(const PolyMat<Cyclotomic>& B, const EVector& e, int i, int m, int n) {
  const VarSpace s{B.p(), B.q()};
  if (!is_fixed(B, e)) throw std::invalid_argument("point is not in the fixed locus");
  const CoordFunction H = hamiltonian(symbolic_fixed_matrix(s, e), i, s.p * (m + n));
  ReducedBracket table(s, e, BracketSpec::single(1 + s.p * n));
  PolyMat<Cyclotomic> out(s.p, s.q);
  for (int v = 0; v < s.count(); ++v) {
    if (!admissible_var(s, e, v)) continue;
    const CoordFunction f = -bracket(CoordFunction::var(v), H, table);
    out.set(s.row(v), s.col(v), s.power(v), evaluate(f, B));
  }
  return out;
}

CoordFunction symbolic_hamiltonian(const VarSpace& s, int i, int j) {
  return hamiltonian(symbolic_matrix(s), i, j);
}

bool jacobi_check(BracketTable& table, int triples, Rng& rng) {
  const int n = table.space().count();
  for (int t = 0; t < triples; ++t) {
    const int a = rng.uniform(0, n - 1), b = rng.uniform(0, n - 1), c = rng.uniform(0, n - 1);
    const CoordFunction fa = CoordFunction::var(a), fb = CoordFunction::var(b), fc = CoordFunction::var(c);
    if (table.coord(a, b) != -table.coord(b, a)) return false;
    if (!jacobiator(fa, fb, fc, table).is_zero()) return false;
  }
  return true;
}

bool compatibility_check(int p, int q, int mu_a, int mu_b, int triples, Rng& rng) {
  if (mu_a < 0 || mu_b < 0 || mu_a > q + 1 || mu_b > q + 1)
    throw std::invalid_argument("bracket indices must lie in [0, q + 1]");
  std::vector<Rational> w(q + 2, Rational(0));
  w.at(mu_a) += rng.nonzero_rational();
  w.at(mu_b) += rng.nonzero_rational();
  LoopBracket table(VarSpace{p, q}, BracketSpec::phi(std::move(w)));
  return jacobi_check(table, triples, rng);
}

bool involutivity_check(int p, int q, int mu) {
  const VarSpace s{p, q};
  LoopBracket table(s, BracketSpec::single(mu));
  std::vector<CoordFunction> hs;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j <= (i + 1) * q; ++j) hs.push_back(symbolic_hamiltonian(s, i, j));
  for (std::size_t a = 0; a < hs.size(); ++a)
    for (std::size_t b = a + 1; b < hs.size(); ++b)
      if (!bracket(hs[a], hs[b], table).is_zero()) return false;
  return true;
}

std::vector<int> casimir_indices(int p, int q, int mu, int i) {
  const VarSpace s{p, q};
  LoopBracket table(s, BracketSpec::single(mu));
  std::vector<int> out;
  for (int j = 0; j <= (i + 1) * q; ++j) {
    const CoordFunction H = symbolic_hamiltonian(s, i, j);
    bool casimir = true;
    for (int v = 0; v < s.count() && casimir; ++v)
      if (!bracket(CoordFunction::var(v), H, table).is_zero()) casimir = false;
    if (casimir) out.push_back(j);
  }
  return out;
}

}  // namespace laxcyc
