#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "laxcyc/polymat.hpp"
#include "laxcyc/spectral.hpp"
#include "laxcyc/symmetry.hpp"

namespace laxcyc::io {

using nlohmann::json;

/// Malformed or inconsistent input documents.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Power-basis coefficients as "num/den" strings: one entry for order 0,
/// p - 1 entries for order p.
json to_json(const Cyclotomic& c, int order);
/// Accepts the array form, a bare rational string, or an integer.
Cyclotomic cyclotomic_from_json(const json& j, int order);

/// {"p", "q", "zeta_order", "entries"}; entries[i][j][k] is the coefficient
/// of x^k in the (i, j) entry, all indices 0-based.
json to_json(const PolyMat<Cyclotomic>& L);
PolyMat<Cyclotomic> polymat_from_json(const json& j);

/// {"zeta_order", "rows"} for a constant matrix.
json to_json(const Mat<Cyclotomic>& m);
Mat<Cyclotomic> mat_from_json(const json& j);

/// Complex values as [re, im].
json to_json(const Complex& z);

json evector_to_json(const EVector& e);
EVector evector_from_json(const json& j);

/// {"zeta_order", "coeffs"}; coeffs[i][j] is the coefficient of x^i y^j.
json to_json(const Curve& P);
Curve curve_from_json(const json& j);

/// Smallest order p with every coefficient in Q(zeta_p); 0 when all rational.
int zeta_order_of(const PolyMat<Cyclotomic>& L);

json read_file(const std::string& path);
/// Two-space indentation and a trailing newline.
void write_file(const std::string& path, const json& j);

}  // namespace laxcyc::io
