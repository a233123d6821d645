#include "hyperbolic/univariate.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(int degree, double coefficient) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = coefficient;
  return Polynomial(std::move(c));
}

double Polynomial::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double s) const {
  // Horner in the polynomial ring: acc <- acc * (t + s) + c_k.
  std::vector<double> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] += s * acc[k];
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return Polynomial(std::move(acc));
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coefficient();
  std::vector<double> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + other * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return Polynomial();
  std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial MonicPolynomial::to_polynomial() const {
  const int n = degree();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  for (int k = 1; k <= n; ++k) c[n - k] = -a[k - 1];
  return Polynomial(std::move(c));
}

MonicPolynomial MonicPolynomial::from_polynomial(const Polynomial& p) {
  const int n = p.degree();
  const double lead = p.leading();
  if (n < 0 || lead == 0.0) throw InputError("monic normalization needs a nonzero leading coefficient");
  MonicPolynomial q;
  q.a.resize(n);
  for (int k = 1; k <= n; ++k) q.a[k - 1] = -p.coefficient(n - k) / lead;
  return q;
}

MonicPolynomial MonicPolynomial::from_roots(std::span<const double> roots) {
  return from_polynomial(Polynomial::from_roots(roots));
}

Matrix companion(const MonicPolynomial& q) {
  const int n = q.degree();
  Matrix c = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) c(n - 1, j) = q.a[n - 1 - j];
  return c;
}

namespace {

// Parlett-Reinsch balancing by powers of two; eigenvalues are unchanged.
void balance(Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const double gamma = 0.9;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (col + row)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

bool is_real(std::complex<double> z, double tol) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z));
}

}  // namespace

const RootSpectrum& RealRootResult::value() const {
  if (!spectrum) throw NonRealRootError("polynomial has a non-real root", offending);
  return *spectrum;
}

std::vector<std::complex<double>> companion_eigenvalues(const MonicPolynomial& q) {
  const int n = q.degree();
  if (n == 0) return {};
  if (n == 1) return {std::complex<double>(q.a[0], 0.0)};
  Matrix c = companion(q);
  balance(c);
  Eigen::EigenSolver<Matrix> solver(c, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

RealRootResult real_roots(const MonicPolynomial& q, const RealRootOptions& options) {
  const auto z = companion_eigenvalues(q);
  const std::size_t n = z.size();

  // Group eigenvalues by single linkage; a cluster holding a non-real member
  // is accepted as one multiple real root when its mean is real.
  std::vector<int> cluster(n);
  std::iota(cluster.begin(), cluster.end(), 0);
  const auto find = [&](int i) {
    while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
    return i;
  };
  bool all_real = true;
  for (std::size_t i = 0; i < n; ++i) all_real = all_real && is_real(z[i], options.tol);
  if (!all_real) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double scale = 1.0 + std::max(std::abs(z[i]), std::abs(z[j]));
        if (std::abs(z[i] - z[j]) <= options.multiplicity_tol * scale) cluster[find(i)] = find(j);
      }
  }

  std::vector<double> roots(n);
  std::vector<char> done(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    const int root = find(static_cast<int>(i));
    std::vector<std::size_t> members;
    std::complex<double> mean = 0.0;
    bool members_real = true;
    for (std::size_t j = i; j < n; ++j)
      if (find(static_cast<int>(j)) == root) {
        members.push_back(j);
        mean += z[j];
        members_real = members_real && is_real(z[j], options.tol);
      }
    mean /= static_cast<double>(members.size());
    if (members_real) {
      for (std::size_t j : members) roots[j] = z[j].real();
    } else if (members.size() >= 2 && is_real(mean, options.tol)) {
      for (std::size_t j : members) roots[j] = mean.real();
    } else {
      std::complex<double> bad = z[i];
      for (std::size_t j : members)
        if (!is_real(z[j], options.tol)) {
          bad = z[j];
          if (bad.imag() > 0) break;
        }
      return RealRootResult{std::nullopt, bad};
    }
    for (std::size_t j : members) done[j] = 1;
  }

  if (options.polish) {
    const Polynomial p = q.to_polynomial();
    const Polynomial dp = p.derivative();
    for (double& r : roots) {
      const double d = dp(r);
      if (d == 0.0) continue;
      const double candidate = r - p(r) / d;
      if (std::abs(p(candidate)) < std::abs(p(r))) r = candidate;
    }
  }

  std::sort(roots.begin(), roots.end(), std::greater<>());
  return RealRootResult{RootSpectrum{std::move(roots)}, {}};
}

RealRootResult real_roots(const Polynomial& p, const RealRootOptions& options, double rel_trim) {
  const Polynomial t = p.trimmed(rel_trim);
  if (t.degree() <= 0) return RealRootResult{RootSpectrum{}, {}};
  return real_roots(MonicPolynomial::from_polynomial(t), options);
}

std::vector<double> interpolate_monomial(std::span<const double> nodes,
                                         std::span<const double> values, double scale) {
  const int count = static_cast<int>(nodes.size());
  Matrix v(count, count);
  Vector rhs(count);
  for (int k = 0; k < count; ++k) {
    const double s = nodes[k] / scale;
    double power = 1.0;
    for (int j = 0; j < count; ++j) {
      v(k, j) = power;
      power *= s;
    }
    rhs(k) = values[k];
  }
  const Vector sol = v.colPivHouseholderQr().solve(rhs);
  std::vector<double> c(count);
  double factor = 1.0;
  for (int j = 0; j < count; ++j) {
    c[j] = sol(j) / factor;
    factor *= scale;
  }
  return c;
}

std::vector<double> chebyshev_nodes(int count, double radius) {
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k)
    t[k] = radius * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
  return t;
}

}  // namespace hyperbolic
