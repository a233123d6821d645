#pragma once

// Reference computations that share no code path with the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline double permanent(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    double term = 1.0;
    for (int i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Sum over permutations of det[A_{s(1)} e_1, ..., A_{s(n)} e_n].
inline double mixed_discriminant_by_columns(const std::vector<Matrix>& mats) {
  const int n = static_cast<int>(mats.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    Matrix c(n, n);
    for (int j = 0; j < n; ++j) c.col(j) = mats[perm[j]].col(j);
    total += c.determinant();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Ascending coefficients of prod (t + lambda_i).
inline std::vector<double> expand_shifted_roots(const std::vector<double>& lambda) {
  std::vector<double> c{1.0};
  for (double l : lambda) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += l * c[k];
      next[k + 1] += c[k];
    }
    c = std::move(next);
  }
  return c;
}

inline std::vector<double> symmetric_eigenvalues_desc(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Real roots of a t^2 + b t + c, descending; empty when complex.
inline std::vector<double> quadratic_roots(double a, double b, double c) {
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  const double s = std::sqrt(disc);
  std::vector<double> r{(-b + s) / (2 * a), (-b - s) / (2 * a)};
  std::sort(r.rbegin(), r.rend());
  return r;
}

inline Matrix row_then_column(Matrix a) {
  for (int i = 0; i < a.rows(); ++i) a.row(i) /= a.row(i).sum();
  for (int j = 0; j < a.cols(); ++j) a.col(j) /= a.col(j).sum();
  return a;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Minimum of a unimodal f on [lo, hi].
inline double golden_section_min(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

inline Matrix random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a * a.transpose() + 1e-3 * Matrix::Identity(n, n);
}

inline Matrix random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return 0.5 * (a + a.transpose());
}

inline bool close(double a, double b, double rel, double abs = 0.0) {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace oracle
