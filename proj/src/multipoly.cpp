#include "laxcyc/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace laxcyc {

std::string VarSpace::name(int v) const {
  return "l^" + std::to_string(power(v)) + "_" + std::to_string(row(v) + 1) + std::to_string(col(v) + 1);
}

CoordFunction::CoordFunction(int c) {
  if (c != 0) t_.emplace(Monomial{}, Cyclotomic(c));
}

CoordFunction::CoordFunction(const Cyclotomic& c) {
  if (!c.is_zero()) t_.emplace(Monomial{}, c);
}

CoordFunction CoordFunction::var(int v, const Cyclotomic& c) {
  CoordFunction f;
  f.add_term(Monomial{v}, c);
  return f;
}

int CoordFunction::degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

Cyclotomic CoordFunction::constant() const {
  auto it = t_.find(Monomial{});
  return it == t_.end() ? Cyclotomic(0) : it->second;
}

bool CoordFunction::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

void CoordFunction::add_term(const Monomial& m, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

CoordFunction CoordFunction::operator-() const {
  CoordFunction r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

CoordFunction& CoordFunction::operator+=(const CoordFunction& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

CoordFunction& CoordFunction::operator-=(const CoordFunction& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

CoordFunction operator*(const CoordFunction& a, const CoordFunction& b) {
  CoordFunction out;
  if (a.is_zero() || b.is_zero()) return out;
  CoordFunction::Monomial merged;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) {
      merged.resize(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), merged.begin());
      out.add_term(merged, ca * cb);
    }
  }
  return out;
}

CoordFunction CoordFunction::scaled(const Cyclotomic& s) const {
  CoordFunction out;
  if (s.is_zero()) return out;
  for (const auto& [m, c] : t_) out.add_term(m, c * s);
  return out;
}

CoordFunction CoordFunction::derivative(int v) const {
  CoordFunction out;
  for (const auto& [m, c] : t_) {
    auto first = std::lower_bound(m.begin(), m.end(), v);
    if (first == m.end() || *first != v) continue;
    auto last = std::upper_bound(first, m.end(), v);
    const long mult = last - first;
    Monomial rest(m.begin(), first);
    rest.insert(rest.end(), first + 1, m.end());
    Cyclotomic coeff = c;
    coeff *= Rational(mult);
    out.add_term(rest, coeff);
  }
  return out;
}

std::vector<int> CoordFunction::variables() const {
  std::vector<int> vs;
  for (const auto& [m, c] : t_) vs.insert(vs.end(), m.begin(), m.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

CoordFunction CoordFunction::rescale_vars(const std::function<Cyclotomic(int)>& factor) const {
  CoordFunction out;
  for (const auto& [m, c] : t_) {
    Cyclotomic coeff = c;
    for (int v : m) coeff *= factor(v);
    out.add_term(m, coeff);
  }
  return out;
}

CoordFunction CoordFunction::restrict_to(const std::function<bool(int)>& keep) const {
  CoordFunction out;
  for (const auto& [m, c] : t_)
    if (std::all_of(m.begin(), m.end(), keep)) out.add_term(m, c);
  return out;
}

CoordFunction CoordFunction::substitute(const std::function<CoordFunction(int)>& image) const {
  CoordFunction out;
  for (const auto& [m, c] : t_) {
    CoordFunction term(c);
    for (int v : m) term = term * image(v);
    out += term;
  }
  return out;
}

namespace {

std::string render(const CoordFunction::Terms& terms, const std::function<std::string(int)>& name) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    std::string cs = c.to_string();
    const bool compound = cs.find_first_of("+ ", 1) != std::string::npos;
    if (!first) os << " + ";
    first = false;
    if (m.empty()) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (cs == "-1") {
      os << "-";
    } else if (cs != "1") {
      os << (compound ? "(" + cs + ")" : cs) << "*";
    }
    for (std::size_t k = 0; k < m.size();) {
      std::size_t e = k;
      while (e < m.size() && m[e] == m[k]) ++e;
      if (k) os << "*";
      os << name(m[k]);
      if (e - k > 1) os << "^" << (e - k);
      k = e;
    }
  }
  return os.str();
}

}  // namespace

std::string CoordFunction::to_string(const VarSpace& space) const {
  return render(t_, [&](int v) { return space.name(v); });
}

std::string CoordFunction::to_string() const {
  return render(t_, [](int v) { return "v" + std::to_string(v); });
}

}  // namespace laxcyc
