#include "laxcyc/io.hpp"

#include <fstream>
#include <sstream>

namespace laxcyc::io {

namespace {

int read_order(const json& j) {
  if (!j.contains("zeta_order")) return 0;
  if (!j["zeta_order"].is_number_integer()) throw InputError("zeta_order must be an integer");
  const int p = j["zeta_order"].get<int>();
  if (p != 0 && !is_prime(p)) throw InputError("zeta_order must be 0 or a prime, got " + std::to_string(p));
  return p;
}

int read_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("expected a rational (string or integer), got " + j.dump());
}

}  // namespace

json to_json(const Cyclotomic& c, int order) {
  const Cyclotomic v = c.with_order(order);
  json out = json::array();
  for (const auto& r : v.coeffs()) out.push_back(to_string(r));
  return out;
}

Cyclotomic cyclotomic_from_json(const json& j, int order) {
  if (!j.is_array()) return Cyclotomic(rational_from_json(j)).with_order(order);
  const std::size_t want = order == 0 ? 1 : static_cast<std::size_t>(order - 1);
  if (j.size() != want && !(j.size() == 1 && order != 0))
    throw InputError("cyclotomic array has " + std::to_string(j.size()) + " entries, expected " + std::to_string(want));
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rational_from_json(v));
  if (c.size() != want) return Cyclotomic(c[0]).with_order(order);
  return Cyclotomic(order, std::move(c));
}

int zeta_order_of(const PolyMat<Cyclotomic>& L) {
  for (int k = 0; k <= L.q(); ++k)
    for (int i = 0; i < L.p(); ++i)
      for (int j = 0; j < L.p(); ++j) {
        const Cyclotomic& c = L.coeff(k)(i, j);
        if (!c.is_rational()) return c.order();
      }
  return 0;
}

json to_json(const PolyMat<Cyclotomic>& L) {
  const int order = zeta_order_of(L);
  json entries = json::array();
  for (int i = 0; i < L.p(); ++i) {
    json row = json::array();
    for (int j = 0; j < L.p(); ++j) {
      json poly = json::array();
      for (int k = 0; k <= L.q(); ++k) poly.push_back(to_json(L.at(i, j, k), order));
      row.push_back(std::move(poly));
    }
    entries.push_back(std::move(row));
  }
  return json{{"p", L.p()}, {"q", L.q()}, {"zeta_order", order}, {"entries", std::move(entries)}};
}

PolyMat<Cyclotomic> polymat_from_json(const json& j) {
  if (!j.is_object()) throw InputError("matrix document must be a JSON object");
  const int p = read_int(j, "p"), q = read_int(j, "q");
  const int order = read_order(j);
  if (p < 1) throw InputError("p must be positive");
  if (q < 0) throw InputError("q must be non-negative");
  const json& entries = j.value("entries", json());
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(p))
    throw InputError("entries must be a p x p array of coefficient lists");
  PolyMat<Cyclotomic> L(p, q);
  for (int i = 0; i < p; ++i) {
    if (!entries[i].is_array() || entries[i].size() != static_cast<std::size_t>(p))
      throw InputError("row " + std::to_string(i + 1) + " of entries does not have p columns");
    for (int jj = 0; jj < p; ++jj) {
      const json& poly = entries[i][jj];
      if (!poly.is_array() || poly.size() > static_cast<std::size_t>(q + 1))
        throw InputError("entry (" + std::to_string(i + 1) + "," + std::to_string(jj + 1) +
                         ") must list at most q + 1 coefficients");
      for (std::size_t k = 0; k < poly.size(); ++k) L.set(i, jj, static_cast<int>(k), cyclotomic_from_json(poly[k], order));
    }
  }
  return L;
}

json to_json(const Mat<Cyclotomic>& m) {
  int order = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_rational()) order = m(i, j).order();
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j), order));
    rows.push_back(std::move(row));
  }
  return json{{"zeta_order", order}, {"rows", std::move(rows)}};
}

Mat<Cyclotomic> mat_from_json(const json& j) {
  const int order = read_order(j);
  const json& rows = j.value("rows", json());
  if (!rows.is_array() || rows.empty()) throw InputError("rows must be a non-empty array");
  const std::size_t n = rows[0].size();
  Mat<Cyclotomic> m(static_cast<int>(rows.size()), static_cast<int>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < n; ++c) m(static_cast<int>(i), static_cast<int>(c)) = cyclotomic_from_json(rows[i][c], order);
  }
  return m;
}

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json evector_to_json(const EVector& e) { return json(e); }

EVector evector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("e must be an integer array");
  EVector e;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError("e must be an integer array");
    e.push_back(v.get<int>());
  }
  return e;
}

json to_json(const Curve& P) {
  int order = 0;
  const auto table = P.table();
  for (const auto& row : table)
    for (const auto& c : row)
      if (!c.is_rational()) order = c.order();
  json coeffs = json::array();
  for (const auto& row : table) {
    json r = json::array();
    for (const auto& c : row) r.push_back(to_json(c, order));
    coeffs.push_back(std::move(r));
  }
  return json{{"zeta_order", order}, {"coeffs", std::move(coeffs)}};
}

Curve curve_from_json(const json& j) {
  if (!j.is_object()) throw InputError("curve document must be a JSON object");
  const int order = read_order(j);
  const json& coeffs = j.value("coeffs", json());
  if (!coeffs.is_array() || coeffs.empty()) throw InputError("coeffs must be a non-empty array of rows");
  std::vector<std::vector<Cyclotomic>> table;
  for (const auto& row : coeffs) {
    if (!row.is_array()) throw InputError("each coeffs row must be an array");
    std::vector<Cyclotomic> r;
    for (const auto& c : row) r.push_back(cyclotomic_from_json(c, order));
    table.push_back(std::move(r));
  }
  return Curve::from_table(table);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace laxcyc::io
