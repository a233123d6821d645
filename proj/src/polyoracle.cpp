#include "hyperbolic/polyoracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

namespace {

void check_dimension(const HyperbolicOracle& oracle, const Point& x, const char* what) {
  if (x.size() != oracle.dimension())
    throw InputError(std::string(what) + " has dimension " + std::to_string(x.size()) +
                     ", oracle expects " + std::to_string(oracle.dimension()));
}

double symmetric_tolerance(const Matrix& a) { return 1e-9 * (1.0 + a.cwiseAbs().maxCoeff()); }

}  // namespace

double DensePolynomial::evaluate(const Point& x) const {
  double acc = 0.0;
  for (const auto& [exps, coef] : terms) {
    double term = coef;
    for (int j = 0; j < m; ++j)
      if (exps[j] > 0) term *= std::pow(x(j), exps[j]);
    acc += term;
  }
  return acc;
}

double DensePolynomial::partial(const Point& x, int i) const {
  double acc = 0.0;
  for (const auto& [exps, coef] : terms) {
    if (exps[i] == 0) continue;
    double term = coef * exps[i];
    for (int j = 0; j < m; ++j) {
      const int e = (j == i) ? exps[j] - 1 : exps[j];
      if (e > 0) term *= std::pow(x(j), e);
    }
    acc += term;
  }
  return acc;
}

Matrix DeterminantalPolynomial::pencil_at(const Point& x) const {
  Matrix acc = Matrix::Zero(n, n);
  for (int j = 0; j < m; ++j)
    if (x(j) != 0.0) acc += x(j) * pencil[j];
  return acc;
}

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::dense: return "dense";
    case OracleKind::determinantal: return "determinantal";
    case OracleKind::product: return "product";
  }
  return "dense";
}

OracleKind HyperbolicOracle::kind() const {
  if (as_dense()) return OracleKind::dense;
  if (as_determinantal()) return OracleKind::determinantal;
  return OracleKind::product;
}

HyperbolicOracle HyperbolicOracle::dense(DensePolynomial poly, Point direction) {
  if (poly.m < 1 || poly.n < 1) throw InputError("dense polynomial needs n >= 1 and m >= 1");
  if (direction.size() != poly.m) throw InputError("direction length differs from m");
  bool nonzero = false;
  for (const auto& [exps, coef] : poly.terms) {
    if (static_cast<int>(exps.size()) != poly.m) throw InputError("exponent vector length differs from m");
    int total = 0;
    for (int e : exps) {
      if (e < 0) throw InputError("negative exponent");
      total += e;
    }
    if (total != poly.n) throw InputError("term is not of degree n");
    nonzero = nonzero || coef != 0.0;
  }
  if (!nonzero) throw InputError("dense polynomial has no nonzero coefficient");
  const double pe = poly.evaluate(direction);
  if (!(std::abs(pe - 1.0) <= 1e-9))
    throw InputError("dense polynomial must satisfy p(e) = 1, got " + std::to_string(pe));
  const int n = poly.n, m = poly.m;
  return HyperbolicOracle(std::move(poly), n, m, std::move(direction));
}

HyperbolicOracle HyperbolicOracle::determinantal(std::vector<Matrix> matrices, Point direction) {
  const int m = static_cast<int>(matrices.size());
  if (m < 1) throw InputError("determinantal pencil needs at least one matrix");
  const int n = static_cast<int>(matrices.front().rows());
  if (n < 1) throw InputError("pencil matrices must be nonempty");
  if (direction.size() != m) throw InputError("direction length differs from the number of matrices");
  for (const auto& b : matrices) {
    if (b.rows() != n || b.cols() != n) throw InputError("pencil matrices must all be n x n");
    if ((b - b.transpose()).cwiseAbs().maxCoeff() > symmetric_tolerance(b))
      throw InputError("pencil matrices must be symmetric");
  }
  DeterminantalPolynomial poly;
  poly.n = n;
  poly.m = m;
  poly.pencil = std::move(matrices);
  for (auto& b : poly.pencil) b = 0.5 * (b + b.transpose());
  poly.direction = direction;

  const Matrix me = poly.pencil_at(direction);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(me);
  const double lmin = solver.eigenvalues().minCoeff();
  if (!(lmin > 1e-12 * std::max(1.0, solver.eigenvalues().maxCoeff())))
    throw InputError("M(e) must be positive definite");
  if ((me - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
    const Matrix w = solver.operatorInverseSqrt();
    for (auto& b : poly.pencil) {
      b = w * b * w;
      b = 0.5 * (b + b.transpose());
    }
    poly.normalized = true;
    poly.input_det_direction = solver.eigenvalues().prod();
  }
  return HyperbolicOracle(std::move(poly), n, m, std::move(direction));
}

HyperbolicOracle HyperbolicOracle::product(int n) {
  if (n < 1) throw InputError("product polynomial needs n >= 1");
  return HyperbolicOracle(ProductPolynomial{n}, n, n, Point::Ones(n));
}

HyperbolicOracle HyperbolicOracle::symmetric_matrices(int n) {
  if (n < 1) throw InputError("matrix size must be >= 1");
  const int m = n * (n + 1) / 2;
  std::vector<Matrix> basis;
  basis.reserve(m);
  for (int i = 0; i < n; ++i) {
    Matrix b = Matrix::Zero(n, n);
    b(i, i) = 1.0;
    basis.push_back(std::move(b));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix b = Matrix::Zero(n, n);
      b(i, j) = b(j, i) = 1.0;
      basis.push_back(std::move(b));
    }
  return determinantal(std::move(basis), matrix_to_point(Matrix::Identity(n, n)));
}

Point matrix_to_point(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw InputError("matrix must be square");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > symmetric_tolerance(a))
    throw InputError("matrix must be symmetric");
  Point x(n * (n + 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i) x(k++) = a(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x(k++) = 0.5 * (a(i, j) + a(j, i));
  return x;
}

Matrix point_to_matrix(const Point& x, int n) {
  if (x.size() != n * (n + 1) / 2) throw InputError("point length does not match n(n+1)/2");
  Matrix a(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) a(i, i) = x(k++);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = x(k++);
  return a;
}

double evaluate(const HyperbolicOracle& oracle, const Point& x) {
  check_dimension(oracle, x, "point");
  if (const auto* d = oracle.as_dense()) return d->evaluate(x);
  if (const auto* det = oracle.as_determinantal()) {
    if (det->n == 1) return det->pencil_at(x)(0, 0);
    return det->pencil_at(x).partialPivLu().determinant();
  }
  return x.prod();
}

Polynomial univariate_restriction(const HyperbolicOracle& oracle, const Point& x, const Point& d) {
  check_dimension(oracle, x, "point");
  check_dimension(oracle, d, "direction");
  const int n = oracle.degree();
  if (oracle.as_product()) {
    // prod_i (d_i t + x_i), expanded exactly.
    std::vector<double> c{1.0};
    for (int i = 0; i < n; ++i) {
      std::vector<double> next(c.size() + 1, 0.0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += d(i) * c[k];
        next[k] += x(i) * c[k];
      }
      c = std::move(next);
    }
    return Polynomial(std::move(c));
  }
  const double radius = 1.0 + x.norm();
  const std::vector<double> nodes = chebyshev_nodes(n + 1, radius);
  std::vector<double> values(n + 1);
  for (int k = 0; k <= n; ++k) values[k] = evaluate(oracle, x + nodes[k] * d);
  return Polynomial(interpolate_monomial(nodes, values, radius));
}

namespace {

RootSpectrum companion_route(const HyperbolicOracle& oracle, const Point& x, const Point& d, double tol) {
  const Polynomial restriction = univariate_restriction(oracle, x, Point(-d));
  RealRootOptions options;
  options.tol = tol;
  const RealRootResult res = real_roots(restriction, options, 0.0);
  if (!res.ok()) throw NonRealRootError("restriction has a non-real root", res.offending);
  return res.value();
}

bool is_e_positive(const HyperbolicOracle& oracle, const Point& d) {
  return cone_membership(oracle, d) == ConeClass::positive;
}

std::vector<double> direction_e_roots(const HyperbolicOracle& oracle, const Point& x, double tol) {
  if (const auto* det = oracle.as_determinantal()) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(det->pencil_at(x), Eigen::EigenvaluesOnly);
    std::vector<double> r(solver.eigenvalues().data(), solver.eigenvalues().data() + det->n);
    std::sort(r.begin(), r.end(), std::greater<>());
    return r;
  }
  if (oracle.as_product()) {
    std::vector<double> r(x.data(), x.data() + x.size());
    std::sort(r.begin(), r.end(), std::greater<>());
    return r;
  }
  return companion_route(oracle, x, oracle.direction(), tol).roots;
}

}  // namespace

RootSpectrum roots_by_restriction(const HyperbolicOracle& oracle, const Point& x, const Point& d,
                                  double tol) {
  check_dimension(oracle, x, "point");
  check_dimension(oracle, d, "direction");
  RootSpectrum s = companion_route(oracle, x, d, tol);
  if (static_cast<int>(s.size()) != oracle.degree())
    throw PreconditionError("restriction lost degree; p(d) vanishes");
  return s;
}

RootSpectrum roots_in_direction(const HyperbolicOracle& oracle, const Point& x, const Point& d,
                                double tol) {
  check_dimension(oracle, x, "point");
  check_dimension(oracle, d, "direction");
  if (!is_e_positive(oracle, d)) throw PreconditionError("direction is not e-positive");
  if (const auto* det = oracle.as_determinantal()) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(det->pencil_at(x), det->pencil_at(d),
                                                            Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolver failed");
    std::vector<double> r(solver.eigenvalues().data(), solver.eigenvalues().data() + det->n);
    std::sort(r.begin(), r.end(), std::greater<>());
    return RootSpectrum{std::move(r)};
  }
  if (oracle.as_product()) {
    std::vector<double> r(x.size());
    for (int i = 0; i < x.size(); ++i) r[i] = x(i) / d(i);
    std::sort(r.begin(), r.end(), std::greater<>());
    return RootSpectrum{std::move(r)};
  }
  return roots_by_restriction(oracle, x, d, tol);
}

double trace_in_direction(const HyperbolicOracle& oracle, const Point& x, const Point& d) {
  // c_{n-1} / c_n of det(M(x) + t M(d)) is tr(M(d)^{-1} M(x)); solving keeps it exact when d is ill-conditioned.
  if (const auto* det = oracle.as_determinantal()) {
    check_dimension(oracle, x, "point");
    check_dimension(oracle, d, "direction");
    const Eigen::LDLT<Matrix> ldlt(det->pencil_at(d));
    const Vector pivots = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || (pivots.array() == 0.0).any())
      throw PreconditionError("p(d) = 0; trace undefined");
    return ldlt.solve(det->pencil_at(x)).trace();
  }
  if (oracle.as_product()) {
    check_dimension(oracle, x, "point");
    check_dimension(oracle, d, "direction");
    if ((d.array() == 0.0).any()) throw PreconditionError("p(d) = 0; trace undefined");
    return (x.array() / d.array()).sum();
  }
  const Polynomial c = univariate_restriction(oracle, x, d);
  const int n = oracle.degree();
  if (c.coefficient(n) == 0.0) throw PreconditionError("p(d) = 0; trace undefined");
  return c.coefficient(n - 1) / c.coefficient(n);
}

bool near_degenerate_direction(const HyperbolicOracle& oracle, const Point& d) {
  return evaluate(oracle, d) < 1e-12;
}

int p_rank(const HyperbolicOracle& oracle, const Point& x, double tol) {
  check_dimension(oracle, x, "point");
  if (x.isZero(0.0)) return 0;
  const auto roots = direction_e_roots(oracle, x, 1e-8);
  const double cutoff = tol * std::max(1.0, roots.front());
  return static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](double r) { return r > cutoff; }));
}

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::positive: return "positive";
    case ConeClass::nonnegative: return "nonnegative";
    case ConeClass::outside: return "outside";
  }
  return "outside";
}

ConeClass cone_membership(const HyperbolicOracle& oracle, const Point& x, double tol) {
  check_dimension(oracle, x, "point");
  std::vector<double> roots;
  try {
    roots = direction_e_roots(oracle, x, 1e-8);
  } catch (const NonRealRootError&) {
    return ConeClass::outside;
  }
  const double scale = tol * std::max(1.0, std::abs(roots.front()));
  const double smallest = roots.back();
  if (smallest > scale) return ConeClass::positive;
  if (smallest >= -scale) return ConeClass::nonnegative;
  return ConeClass::outside;
}

HyperbolicitySample hyperbolicity_sample_test(const HyperbolicOracle& oracle, int num_samples,
                                              std::uint64_t seed, double tol) {
  if (num_samples < 1) throw InputError("num_samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealRootOptions options;
  options.tol = tol;
  const Point minus_e = -oracle.direction();
  HyperbolicitySample out;
  for (int s = 0; s < num_samples; ++s) {
    Point x(oracle.dimension());
    for (int j = 0; j < x.size(); ++j) x(j) = normal(rng);
    const RealRootResult res = real_roots(univariate_restriction(oracle, x, minus_e), options, 0.0);
    if (!res.ok()) {
      out.verdict = false;
      out.counterexample = x;
      break;
    }
  }
  return out;
}

double partial_derivative(const HyperbolicOracle& oracle, const Point& alpha, int i) {
  check_dimension(oracle, alpha, "point");
  if (i < 0 || i >= oracle.dimension()) throw InputError("partial derivative index out of range");
  if (const auto* d = oracle.as_dense()) return d->partial(alpha, i);
  if (oracle.as_product()) {
    double acc = 1.0;
    for (int j = 0; j < alpha.size(); ++j)
      if (j != i) acc *= alpha(j);
    return acc;
  }
  const auto* det = oracle.as_determinantal();
  const Matrix m = det->pencil_at(alpha);
  const Eigen::PartialPivLU<Matrix> lu(m);
  if (lu.rcond() > 1e-12) return lu.determinant() * lu.solve(det->pencil[i]).trace();
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(alpha(i)));
  Point plus = alpha, minus = alpha;
  plus(i) += h;
  minus(i) -= h;
  return (evaluate(oracle, plus) - evaluate(oracle, minus)) / (2.0 * h);
}

}  // namespace hyperbolic
