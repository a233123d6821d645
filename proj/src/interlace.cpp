#include "hyperbolic/interlace.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

std::string to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::hyperbolic: return "hyperbolic";
    case PairVerdict::not_hyperbolic: return "not_hyperbolic";
    case PairVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min_gap(const RootSpectrum& s) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) g = std::min(g, s.roots[i] - s.roots[i + 1]);
  return g;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<double> eigenvalues_desc(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  return sorted_desc(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

}  // namespace

PairReport obreschkoff_pair_test(const MonicPolynomial& q, const Polynomial& r,
                                 const PairTestOptions& options) {
  const int n = q.degree();
  if (n < 1) throw InputError("q must have degree >= 1");
  const Polynomial rt = r.trimmed();
  if (rt.degree() > n) throw InputError("deg r exceeds deg q");

  RealRootOptions root_options;
  root_options.tol = options.tol;
  root_options.polish = true;
  const RealRootResult roots = real_roots(q, root_options);
  if (!roots.ok()) throw NonRealRootError("q is not real-rooted", roots.offending);

  PairReport report;
  report.roots_of_q = roots.value();
  report.constant_term = rt.coefficient(n);
  const auto& lambda = report.roots_of_q.roots;
  const double scale = std::max(1.0, max_abs(lambda));
  if (n > 1 && min_gap(report.roots_of_q) < options.separation_tol * scale) {
    report.verdict = PairVerdict::inconclusive;
    return report;
  }

  const Polynomial dq = q.to_polynomial().derivative();
  report.residues.reserve(n);
  for (double l : lambda) report.residues.push_back(rt(l) / dq(l));

  const double zero = options.tol * std::max(1.0, max_abs(report.residues));
  bool positive = false, negative = false;
  for (double a : report.residues) {
    positive = positive || a > zero;
    negative = negative || a < -zero;
  }
  report.verdict = (positive && negative) ? PairVerdict::not_hyperbolic : PairVerdict::hyperbolic;
  return report;
}

PairReport sampled_pencil_test(const MonicPolynomial& q, const Polynomial& r, int num_dirs, double tol) {
  if (num_dirs < 3) throw InputError("sampled pencil test needs at least 3 directions");
  const int n = q.degree();
  if (r.trimmed().degree() > n) throw InputError("deg r exceeds deg q");

  const Polynomial qp = q.to_polynomial();
  PairReport report;
  report.min_root_gap = std::numeric_limits<double>::infinity();
  RealRootOptions root_options;
  root_options.tol = tol;

  // The two generators and the degree-drop direction come first, then the grid.
  std::vector<std::pair<double, double>> dirs{{1.0, 0.0}, {0.0, 1.0}, {1.0, -1.0}};
  for (int j = 1; j < num_dirs; ++j) {
    const double theta = std::numbers::pi * j / num_dirs;
    double x = std::cos(theta), y = std::sin(theta);
    if (std::abs(x) < 1e-15) x = 0.0;
    if (std::abs(y) < 1e-15) y = 0.0;
    if (x == 0.0 || std::abs(x + y) <= 1e-12 * (std::abs(x) + std::abs(y))) continue;
    dirs.emplace_back(x, y);
  }

  for (const auto& [x, y] : dirs) {
    std::vector<double> c((qp * x + r * y).coefficients());
    c.resize(std::max<std::size_t>(c.size(), n + 1), 0.0);
    const double lead_scale = std::abs(x) + std::abs(y) * std::max(1.0, std::abs(r.coefficient(n)));
    if (std::abs(c[n]) <= 1e-12 * lead_scale) c[n] = 0.0;
    const RealRootResult res = real_roots(Polynomial(std::move(c)), root_options);
    if (!res.ok()) {
      report.verdict = PairVerdict::not_hyperbolic;
      report.counterexample_direction = std::make_pair(x, y);
      break;
    }
    if (x == 1.0 && y == 0.0) report.roots_of_q = res.value();
    if (res.value().size() >= 2) report.min_root_gap = std::min(report.min_root_gap, min_gap(res.value()));
  }
  if (!report.counterexample_direction) report.verdict = PairVerdict::hyperbolic;
  return report;
}

MonicPolynomial monic_partner(const MonicPolynomial& q, const Polynomial& r) {
  const Polynomial rt = r.trimmed();
  const int n = q.degree();
  if (rt.degree() > n) throw InputError("deg r exceeds deg q");
  if (rt.degree() == n) return MonicPolynomial::from_polynomial(rt);
  return MonicPolynomial::from_polynomial(q.to_polynomial() + rt);
}

Matrix pencil_matrix(const MonicPolynomial& q, const MonicPolynomial& r, double x, double y) {
  if (q.degree() != r.degree()) throw InputError("pencil needs polynomials of equal degree");
  return x * companion(q) + y * companion(r);
}

std::vector<double> pencil_char_poly(const MonicPolynomial& q, const MonicPolynomial& r, double x,
                                     double y) {
  if (q.degree() != r.degree()) throw InputError("pencil needs polynomials of equal degree");
  // x C_q + y C_r has superdiagonal s = x + y and last row w_n..w_1 with
  // w_k = x a_k + y b_k; expanding along the last row gives
  // det(tI - M) = t^n - sum_k s^{k-1} w_k t^{n-k}.
  const int n = q.degree();
  const double s = x + y;
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  double power = 1.0;
  for (int k = 1; k <= n; ++k) {
    c[n - k] = -power * (x * q.a[k - 1] + y * r.a[k - 1]);
    power *= s;
  }
  return c;
}

MajorizationReport majorization_check(std::vector<double> u, std::vector<double> v, double tol) {
  if (u.size() != v.size()) throw InputError("majorization needs vectors of equal length");
  u = sorted_desc(std::move(u));
  v = sorted_desc(std::move(v));
  MajorizationReport report;
  report.prefix_gaps.reserve(u.size());
  double pu = 0.0, pv = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    pu += u[i];
    pv += v[i];
    report.prefix_gaps.push_back(pv - pu);
    ok = ok && (pv - pu >= -tol);
  }
  report.total_gap = pv - pu;
  report.majorized = ok && std::abs(report.total_gap) <= tol;
  return report;
}

MajorizationReport lidskii_experiment(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InputError("lidskii experiment needs two square matrices of equal size");
  const auto la = eigenvalues_desc(a);
  const auto lb = eigenvalues_desc(b);
  const auto lab = eigenvalues_desc(a + b);
  std::vector<double> diff(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) diff[i] = lab[i] - la[i];
  return majorization_check(std::move(diff), lb, tol);
}

CorollaryReport corollary_majorization_experiment(const MonicPolynomial& q, const MonicPolynomial& r,
                                                  const Triple& point, const Triple& delta,
                                                  const CorollaryOptions& options) {
  if (q.degree() != r.degree()) throw InputError("corollary experiment needs equal degrees");
  const double l = point.x + point.y;
  const double m = delta.x + delta.y;
  const double k = l + m;
  constexpr double degenerate = 1e-12;
  if (std::abs(l) <= degenerate || std::abs(m) <= degenerate || std::abs(k) <= degenerate)
    throw PreconditionError("x + y, delta_1 + delta_2 and their sum must be nonzero");

  const Polynomial qp = q.to_polynomial();
  const Polynomial rp = r.to_polynomial();
  const double shift_xd = options.literal_shift ? delta.z / k : (point.z + delta.z) / k;
  const Polynomial p_x = (qp * point.x + rp * point.y).shifted(-point.z / l);
  const Polynomial p_xd = (qp * (point.x + delta.x) + rp * (point.y + delta.y)).shifted(-shift_xd);
  const Polynomial p_d = (qp * delta.x + rp * delta.y).shifted(-delta.z / m);

  RealRootOptions root_options;
  root_options.tol = options.tol;
  const auto ord = [&](const Polynomial& p, double scale) {
    const RealRootResult res = real_roots(p, root_options, 0.0);
    if (!res.ok()) throw NonRealRootError("pencil member has a non-real root", res.offending);
    std::vector<double> v = res.value().roots;
    for (double& x : v) x *= scale;
    if (options.ordering == OrdConvention::sort_after_scaling) v = sorted_desc(std::move(v));
    return v;
  };

  CorollaryReport report;
  report.ord_x = ord(p_x, l);
  report.ord_x_delta = ord(p_xd, k);
  report.ord_delta = ord(p_d, m);
  std::vector<double> diff(report.ord_x.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = report.ord_x_delta[i] - report.ord_delta[i];
  const double scale = 1.0 + std::max({max_abs(report.ord_x), max_abs(report.ord_x_delta),
                                       max_abs(report.ord_delta)});
  report.majorization = majorization_check(std::move(diff), report.ord_x, options.tol * scale);
  return report;
}

namespace {

// Shared grid machinery for the two line checks.
struct LineSweep {
  std::function<std::optional<RootSpectrum>(double)> roots;
  std::function<double(const RootSpectrum&)> value;
};

void check_midpoint_convexity(const LineSweep& sweep, const std::vector<double>& grid, double tol,
                              LineConvexityReport& report) {
  report.values.clear();
  for (double a : grid) {
    const auto spec = sweep.roots(a);
    if (!spec) {
      report.real_rooted = false;
      report.convex = false;
      return;
    }
    report.values.push_back(sweep.value(*spec));
  }
  report.convex = true;
  report.worst_convexity_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const auto spec = sweep.roots(0.5 * (grid[i] + grid[j]));
      if (!spec) {
        report.real_rooted = false;
        report.convex = false;
        return;
      }
      const double mid = sweep.value(*spec);
      const double mean = 0.5 * (report.values[i] + report.values[j]);
      const double slack = mean - mid;
      report.worst_convexity_slack = std::min(report.worst_convexity_slack, slack);
      if (slack < -tol * (1.0 + std::abs(mid))) report.convex = false;
    }
}

double top_k(const RootSpectrum& s, int k) {
  double acc = 0.0;
  for (int i = 0; i < k; ++i) acc += s.roots[i];
  return acc;
}

}  // namespace

double SymmetricConvexFunction::operator()(const RootSpectrum& s) const {
  switch (kind) {
    case SymmetricConvexKind::topk_sum: return top_k(s, k);
    case SymmetricConvexKind::neg_bottomk_sum: {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc -= s.roots[s.size() - 1 - i];
      return acc;
    }
    case SymmetricConvexKind::max: return s.largest();
    case SymmetricConvexKind::sum_abs: {
      double acc = 0.0;
      for (double x : s.roots) acc += std::abs(x);
      return acc;
    }
  }
  return 0.0;
}

LineConvexityReport derivative_line_convexity(const MonicPolynomial& q, double b, double c, int k,
                                              const std::vector<double>& grid, double tol) {
  const int n = q.degree();
  if (k < 1 || k > n) throw InputError("k must lie in [1, deg q]");
  {
    PairTestOptions opts;
    const RealRootResult res = real_roots(q);
    if (!res.ok()) throw NonRealRootError("q is not real-rooted", res.offending);
    const double scale = std::max(1.0, std::max(std::abs(res.value().largest()), std::abs(res.value().smallest())));
    if (n > 1 && min_gap(res.value()) < opts.separation_tol * scale)
      throw PreconditionError("q must have distinct real roots");
  }
  const Polynomial qp = q.to_polynomial();
  const Polynomial dq = qp.derivative();
  RealRootOptions root_options;
  root_options.tol = tol;
  LineSweep sweep;
  sweep.roots = [&](double a) -> std::optional<RootSpectrum> {
    const Polynomial p = (qp - dq * a).shifted(b + c * a);
    RealRootResult res = real_roots(p, root_options, 0.0);
    return res.spectrum;
  };
  sweep.value = [k](const RootSpectrum& s) { return top_k(s, k); };

  LineConvexityReport report;
  check_midpoint_convexity(sweep, grid, tol, report);
  if (!report.real_rooted) return report;

  if (b == 0.0 && c == 1.0) {
    const auto at_zero = sweep.roots(0.0);
    const double f0 = sweep.value(*at_zero);
    bool min_ok = true;
    for (double v : report.values) min_ok = min_ok && f0 <= v + tol * (1.0 + std::abs(v));
    report.min_at_zero = min_ok;
  }
  if (c == 1.0) {
    std::vector<RootSpectrum> spectra;
    for (double a : grid) spectra.push_back(*sweep.roots(a));
    bool constant = true;
    const double s0 = spectra.front().sum();
    for (const auto& s : spectra) constant = constant && std::abs(s.sum() - s0) <= tol * (1.0 + std::abs(s0));
    report.sum_constant = constant;
    bool chain = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        if (i == j || grid[i] * grid[j] < 0.0 || std::abs(grid[i]) > std::abs(grid[j])) continue;
        const double scale = 1.0 + std::max(max_abs(spectra[i].roots), max_abs(spectra[j].roots));
        chain = chain && majorization_check(spectra[i].roots, spectra[j].roots, tol * scale).majorized;
      }
    report.majorization_chain = chain;
  }
  return report;
}

LineConvexityReport symmetric_convex_line_check(const MonicPolynomial& q, const MonicPolynomial& r,
                                                double b, double c, const SymmetricConvexFunction& f,
                                                const std::vector<double>& grid, double tol) {
  const int n = q.degree();
  if (r.degree() != n) throw InputError("line check needs polynomials of equal degree");
  if ((f.kind == SymmetricConvexKind::topk_sum || f.kind == SymmetricConvexKind::neg_bottomk_sum) &&
      (f.k < 1 || f.k > n))
    throw InputError("k must lie in [1, n]");
  const Polynomial qp = q.to_polynomial();
  const Polynomial rp = r.to_polynomial();
  RealRootOptions root_options;
  root_options.tol = tol;
  LineSweep sweep;
  sweep.roots = [&](double a) -> std::optional<RootSpectrum> {
    const Polynomial p = (qp * a + rp * (1.0 - a)).shifted(b + c * a);
    return real_roots(p, root_options, 0.0).spectrum;
  };
  sweep.value = [&f](const RootSpectrum& s) { return f(s); };
  LineConvexityReport report;
  check_midpoint_convexity(sweep, grid, tol, report);
  return report;
}

}  // namespace hyperbolic
