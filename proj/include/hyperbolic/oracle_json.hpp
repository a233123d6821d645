#pragma once

#include <json.hpp>

#include "hyperbolic/polyoracle.hpp"

namespace hyperbolic {

// Every parser throws InputError naming the offending field.

HyperbolicOracle oracle_from_json(const nlohmann::json& doc);
nlohmann::json oracle_to_json(const HyperbolicOracle& oracle);

// {"point":[...]} or a bare array.
Point point_from_json(const nlohmann::json& doc);
nlohmann::json point_to_json(const Point& x);

// Row-major array of rows.
Matrix matrix_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const Matrix& a);

// {"points":[...]} or {"matrices":[...]}; matrices are mapped through
// matrix_to_point, so the tuple lives in HyperbolicOracle::symmetric_matrices(n).
struct TupleDocument {
  PointTuple tuple;
  std::optional<int> matrix_size;
};
TupleDocument tuple_from_json(const nlohmann::json& doc);
nlohmann::json tuple_to_json(const PointTuple& tuple);
nlohmann::json matrices_to_json(const std::vector<Matrix>& matrices);

// {"degree":n,"a":[a_1..a_n]}.
MonicPolynomial monic_from_json(const nlohmann::json& doc);
nlohmann::json monic_to_json(const MonicPolynomial& q);

// A general "r": either a monic document or {"coefficients":[c_0..c_k]} ascending.
Polynomial polynomial_from_json(const nlohmann::json& doc);

}  // namespace hyperbolic
