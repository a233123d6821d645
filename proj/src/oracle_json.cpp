#include "hyperbolic/oracle_json.hpp"

#include <cmath>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return doc.at(name);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(where + ": number is not finite");
  return x;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<int>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Point to_point(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Point point_from_json(const json& doc) {
  const json& arr = (doc.is_object()) ? field(doc, "point") : doc;
  return to_point(number_array(arr, "point"));
}

json point_to_json(const Point& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

Matrix matrix_from_json(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw InputError("matrix: expected a nonempty array of rows");
  const std::size_t rows = doc.size();
  std::size_t cols = 0;
  Matrix a;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = number_array(doc[i], "matrix row " + std::to_string(i));
    if (i == 0) {
      cols = row.size();
      if (cols == 0) throw InputError("matrix: empty row");
      a.resize(rows, cols);
    } else if (row.size() != cols) {
      throw InputError("matrix: ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = row[j];
  }
  return a;
}

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

HyperbolicOracle oracle_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("oracle document must be an object");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) throw InputError("oracle \"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "product") {
    const int n = integer(field(doc, "n"), "n");
    if (n < 1) throw InputError("product oracle needs n >= 1");
    return HyperbolicOracle::product(n);
  }
  if (k == "determinantal") {
    const int n = integer(field(doc, "n"), "n");
    const int m = integer(field(doc, "m"), "m");
    const json& mats = field(doc, "matrices");
    if (!mats.is_array() || static_cast<int>(mats.size()) != m)
      throw InputError("\"matrices\" must list exactly m matrices");
    std::vector<Matrix> pencil;
    for (const auto& mj : mats) {
      Matrix b = matrix_from_json(mj);
      if (b.rows() != n || b.cols() != n) throw InputError("pencil matrix is not n x n");
      pencil.push_back(std::move(b));
    }
    const Point e = to_point(number_array(field(doc, "direction"), "direction"));
    if (e.size() != m) throw InputError("direction length differs from m");
    return HyperbolicOracle::determinantal(std::move(pencil), e);
  }
  if (k == "dense") {
    DensePolynomial poly;
    poly.n = integer(field(doc, "n"), "n");
    poly.m = integer(field(doc, "m"), "m");
    if (poly.n < 1 || poly.m < 1) throw InputError("dense oracle needs n >= 1 and m >= 1");
    const json& terms = field(doc, "terms");
    if (!terms.is_array() || terms.empty()) throw InputError("\"terms\" must be a nonempty array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string where = "terms[" + std::to_string(t) + "]";
      const json& term = terms[t];
      const json& exps_doc = field(term, "exps");
      if (!exps_doc.is_array()) throw InputError(where + ".exps must be an array");
      std::vector<int> exps;
      for (const auto& e : exps_doc) exps.push_back(integer(e, where + ".exps"));
      poly.terms[exps] += number(field(term, "coef"), where + ".coef");
    }
    Point e = Point::Zero(poly.m);
    if (doc.contains("direction")) {
      e = to_point(number_array(doc.at("direction"), "direction"));
    } else {
      e(0) = 1.0;
    }
    return HyperbolicOracle::dense(std::move(poly), std::move(e));
  }
  throw InputError("unknown oracle kind \"" + k + "\"");
}

json oracle_to_json(const HyperbolicOracle& oracle) {
  if (oracle.as_product()) return {{"kind", "product"}, {"n", oracle.degree()}};
  if (const auto* d = oracle.as_dense()) {
    json terms = json::array();
    for (const auto& [exps, coef] : d->terms) terms.push_back({{"exps", exps}, {"coef", coef}});
    return {{"kind", "dense"}, {"n", d->n}, {"m", d->m}, {"terms", terms},
            {"direction", point_to_json(oracle.direction())}};
  }
  const auto* det = oracle.as_determinantal();
  json mats = json::array();
  for (const auto& b : det->pencil) mats.push_back(matrix_to_json(b));
  return {{"kind", "determinantal"}, {"n", det->n}, {"m", det->m}, {"matrices", mats},
          {"direction", point_to_json(oracle.direction())}};
}

TupleDocument tuple_from_json(const json& doc) {
  TupleDocument out;
  if (doc.is_object() && doc.contains("matrices")) {
    const json& mats = doc.at("matrices");
    if (!mats.is_array() || mats.empty()) throw InputError("\"matrices\" must be a nonempty array");
    int n = -1;
    for (const auto& mj : mats) {
      const Matrix a = matrix_from_json(mj);
      if (n < 0) n = static_cast<int>(a.rows());
      if (a.rows() != n || a.cols() != n) throw InputError("tuple matrices must all be n x n");
      out.tuple.points.push_back(matrix_to_point(a));
    }
    out.matrix_size = n;
    return out;
  }
  const json& pts = doc.is_object() ? field(doc, "points") : doc;
  if (!pts.is_array() || pts.empty()) throw InputError("\"points\" must be a nonempty array");
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.tuple.points.push_back(to_point(number_array(pts[i], "points[" + std::to_string(i) + "]")));
  for (const auto& p : out.tuple.points)
    if (p.size() != out.tuple.points.front().size()) throw InputError("tuple points differ in dimension");
  return out;
}

json tuple_to_json(const PointTuple& tuple) {
  json pts = json::array();
  for (const auto& p : tuple.points) pts.push_back(point_to_json(p));
  return {{"points", pts}};
}

json matrices_to_json(const std::vector<Matrix>& matrices) {
  json mats = json::array();
  for (const auto& a : matrices) mats.push_back(matrix_to_json(a));
  return {{"matrices", mats}};
}

MonicPolynomial monic_from_json(const json& doc) {
  const int n = integer(field(doc, "degree"), "degree");
  if (n < 1) throw InputError("monic polynomial needs degree >= 1");
  MonicPolynomial q;
  q.a = number_array(field(doc, "a"), "a");
  if (static_cast<int>(q.a.size()) != n) throw InputError("\"a\" must have exactly degree entries");
  return q;
}

json monic_to_json(const MonicPolynomial& q) { return {{"degree", q.degree()}, {"a", q.a}}; }

Polynomial polynomial_from_json(const json& doc) {
  if (doc.is_object() && doc.contains("coefficients")) {
    auto c = number_array(doc.at("coefficients"), "coefficients");
    if (c.empty()) throw InputError("\"coefficients\" must be nonempty");
    return Polynomial(std::move(c));
  }
  return monic_from_json(doc).to_polynomial();
}

}  // namespace hyperbolic
