#include "hyperbolic/mixedforms.hpp"

#include <algorithm>
#include <cmath>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/hull.hpp"

namespace hyperbolic {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_tuple(const HyperbolicOracle& oracle, const PointTuple& x) {
  if (static_cast<int>(x.size()) != oracle.degree())
    throw InputError("tuple has " + std::to_string(x.size()) + " points, oracle degree is " +
                     std::to_string(oracle.degree()));
  for (const auto& p : x.points)
    if (p.size() != oracle.dimension()) throw InputError("tuple point dimension differs from m");
}

void compositions_into(int k, int n, std::vector<int>& prefix, std::vector<Composition>& out) {
  if (static_cast<int>(prefix.size()) == k - 1) {
    prefix.push_back(n);
    out.push_back(Composition{prefix});
    prefix.pop_back();
    return;
  }
  for (int v = n; v >= 0; --v) {
    prefix.push_back(v);
    compositions_into(k, n - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MixedValueDetail mixed_value_detail(const HyperbolicOracle& oracle, const PointTuple& x,
                                    const ProgressCallback& progress) {
  check_tuple(oracle, x);
  const int n = oracle.degree();
  if (n > kMixedValueMaxDegree) throw BudgetError("mixed value is capped at n <= 20");
  // p(-y) = (-1)^n p(y) pairs b with -b, so the masks with b_n = +1 suffice.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  MixedValueDetail out;
  double acc = 0.0;
  Point s(oracle.dimension());
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    s = x[n - 1];
    int negatives = 0;
    for (int i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1U) {
        s -= x[i];
        ++negatives;
      } else {
        s += x[i];
      }
    }
    const double v = evaluate(oracle, s);
    out.max_term = std::max(out.max_term, std::abs(v));
    acc += (negatives % 2 == 0) ? v : -v;
    if (progress && (mask + 1) % 4096 == 0) progress(mask + 1, half);
  }
  if (progress) progress(half, half);
  out.value = std::ldexp(acc, -(n - 1));
  return out;
}

double mixed_value(const HyperbolicOracle& oracle, const PointTuple& x, const ProgressCallback& progress) {
  return mixed_value_detail(oracle, x, progress).value;
}

double mixed_discriminant(const std::vector<Matrix>& matrices) {
  const int n = static_cast<int>(matrices.size());
  if (n < 1) throw InputError("mixed discriminant needs at least one matrix");
  PointTuple tuple;
  for (const auto& a : matrices) {
    if (a.rows() != n || a.cols() != n)
      throw InputError("mixed discriminant needs n matrices of size n x n");
    tuple.points.push_back(matrix_to_point(a));
  }
  return mixed_value(HyperbolicOracle::symmetric_matrices(n), tuple);
}

PointTuple repeated_tuple(const PointTuple& x, const Composition& r) {
  if (r.size() != x.size()) throw InputError("composition length differs from tuple length");
  PointTuple out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0) throw InputError("composition entries must be nonnegative");
    for (int c = 0; c < r[i]; ++c) out.points.push_back(x[i]);
  }
  return out;
}

std::vector<Composition> compositions(int k, int n) {
  if (k < 1 || n < 0) throw InputError("compositions need k >= 1 and n >= 0");
  std::vector<Composition> out;
  std::vector<int> prefix;
  compositions_into(k, n, prefix, out);
  return out;
}

bool SupportSet::contains(const Composition& r) const {
  return std::any_of(members.begin(), members.end(), [&](const SupportEntry& e) { return e.r == r; });
}

SupportSet support(const HyperbolicOracle& oracle, const PointTuple& x, double tol) {
  check_tuple(oracle, x);
  const int n = oracle.degree();
  if (n > kSupportMaxDegree) throw BudgetError("support enumeration is capped at n <= 8");
  const auto comps = compositions(n, n);
  std::vector<double> values;
  values.reserve(comps.size());
  double scale = std::abs(evaluate(oracle, x.sum()));
  for (const auto& r : comps) {
    const auto detail = mixed_value_detail(oracle, repeated_tuple(x, r));
    values.push_back(detail.value);
    scale = std::max(scale, detail.max_term);
  }
  SupportSet s;
  s.threshold = tol * factorial(n) * scale;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (values[i] > s.threshold) s.members.push_back({comps[i], values[i]});
  return s;
}

bool polytope_membership(const Composition& r, const SupportSet& s) {
  if (s.empty()) throw InputError("polytope membership against an empty support");
  std::vector<std::vector<double>> pts;
  pts.reserve(s.members.size());
  for (const auto& m : s.members) {
    if (m.r.size() != r.size()) throw InputError("composition lengths differ");
    pts.emplace_back(m.r.entries.begin(), m.r.entries.end());
  }
  return convex_hull_contains(pts, std::vector<double>(r.entries.begin(), r.entries.end()), 1e-9);
}

SaturationReport newton_saturation_check(const HyperbolicOracle& oracle, const PointTuple& x, double tol) {
  SaturationReport report;
  report.support = support(oracle, x, tol);
  if (report.support.empty()) return report;
  for (const auto& r : compositions(oracle.degree(), oracle.degree())) {
    if (report.support.contains(r)) continue;
    if (polytope_membership(r, report.support)) report.violations.push_back(r);
  }
  report.saturated = report.violations.empty();
  return report;
}

AfReport af_check(const HyperbolicOracle& oracle, const PointTuple& x) {
  check_tuple(oracle, x);
  if (oracle.degree() < 2) throw InputError("AF check needs n >= 2");
  AfReport report;
  for (const auto& p : x.points)
    report.inputs_nonnegative = report.inputs_nonnegative && cone_membership(oracle, p) != ConeClass::outside;
  PointTuple t11 = x, t22 = x;
  t11[1] = x[0];
  t22[0] = x[1];
  const auto d12 = mixed_value_detail(oracle, x);
  const auto d11 = mixed_value_detail(oracle, t11);
  const auto d22 = mixed_value_detail(oracle, t22);
  const double m12 = d12.value, m11 = d11.value, m22 = d22.value;
  report.residual = m12 * m12 - m11 * m22;
  // Polarization rounding is proportional to the largest term, not to M.
  report.scale = std::max(
      {m12 * m12, std::abs(m11 * m22), d12.max_term * d12.max_term, d11.max_term * d22.max_term});
  return report;
}

Polynomial phi_k(const HyperbolicOracle& oracle, const Point& x, const std::vector<Point>& tail, int k) {
  const int n = oracle.degree();
  if (k < 1 || k > n) throw InputError("k must lie in [1, n]");
  if (static_cast<int>(tail.size()) != n - k) throw InputError("tail must hold n - k points");
  if (x.size() != oracle.dimension()) throw InputError("point dimension differs from m");
  for (const auto& p : tail) {
    if (p.size() != oracle.dimension()) throw InputError("tail point dimension differs from m");
    if (cone_membership(oracle, p) != ConeClass::positive)
      throw PreconditionError("tail points must be e-positive");
  }
  const double radius = 1.0 + x.norm();
  const auto nodes = chebyshev_nodes(k + 1, radius);
  std::vector<double> values(k + 1);
  for (int j = 0; j <= k; ++j) {
    PointTuple t;
    const Point head = x + nodes[j] * oracle.direction();
    for (int c = 0; c < k; ++c) t.points.push_back(head);
    for (const auto& p : tail) t.points.push_back(p);
    values[j] = mixed_value(oracle, t);
  }
  return Polynomial(interpolate_monomial(nodes, values, radius));
}

KHyperbolicReport k_hyperbolic_check(const HyperbolicOracle& oracle, const Point& x,
                                     const std::vector<Point>& tail, int k, double tol) {
  KHyperbolicReport report;
  report.phi = phi_k(oracle, x, tail, k);
  RealRootOptions options;
  options.tol = tol;
  const auto res = real_roots(report.phi, options);
  report.real_rooted = res.ok();
  report.roots = res.spectrum;
  if (k == 2) {
    const double a = report.phi.coefficient(2), b = report.phi.coefficient(1), c = report.phi.coefficient(0);
    report.discriminant = b * b - 4.0 * a * c;
  }
  return report;
}

std::vector<double> log_concavity_profile(const HyperbolicOracle& oracle, const Point& x, const Point& y) {
  if (x.size() != oracle.dimension() || y.size() != oracle.dimension())
    throw InputError("point dimension differs from m");
  if (cone_membership(oracle, x) != ConeClass::positive || cone_membership(oracle, y) != ConeClass::positive)
    throw PreconditionError("log-concavity profile needs e-positive x and y");
  const int n = oracle.degree();
  std::vector<double> profile(n + 1);
  for (int i = 0; i <= n; ++i) {
    PointTuple t;
    for (int c = 0; c < i; ++c) t.points.push_back(x);
    for (int c = i; c < n; ++c) t.points.push_back(y);
    profile[i] = mixed_value(oracle, t);
  }
  return profile;
}

}  // namespace hyperbolic
