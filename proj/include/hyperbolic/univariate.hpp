#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "hyperbolic/types.hpp"

namespace hyperbolic {

// Real univariate polynomial, coefficients stored ascending: c_0 + c_1 t + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  static Polynomial from_roots(std::span<const double> roots);
  static Polynomial monomial(int degree, double coefficient = 1.0);

  // Index of the highest stored coefficient; -1 for the empty polynomial.
  // Trailing zeros are kept; use trimmed() to drop them.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(int k) const;
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Polynomial derivative() const;
  // t -> p(t + s).
  Polynomial shifted(double s) const;
  // Drops leading coefficients with |c| <= rel_tol * max|c|.
  Polynomial trimmed(double rel_tol = 0.0) const;
  double max_abs_coefficient() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;
  friend Polynomial operator*(double s, const Polynomial& p) { return p * s; }

 private:
  std::vector<double> coeffs_;
};

// q(x) = x^n - a_1 x^{n-1} - ... - a_n, stored as (a_1, ..., a_n).
struct MonicPolynomial {
  std::vector<double> a;

  int degree() const { return static_cast<int>(a.size()); }
  Polynomial to_polynomial() const;

  // Divides by the leading coefficient, which must be nonzero.
  static MonicPolynomial from_polynomial(const Polynomial& p);
  static MonicPolynomial from_roots(std::span<const double> roots);
};

// Companion matrix: ones on the superdiagonal, last row (a_n, ..., a_1).
Matrix companion(const MonicPolynomial& q);

struct RealRootOptions {
  double tol = 1e-8;               // |Im z| <= tol * (1 + |z|)
  double multiplicity_tol = 1e-5;  // radius accepted for a multiple-root cluster
  bool polish = false;             // one Newton step per accepted root
};

struct RealRootResult {
  std::optional<RootSpectrum> spectrum;
  std::complex<double> offending{};

  bool ok() const { return spectrum.has_value(); }
  // Throws NonRealRootError when extraction failed.
  const RootSpectrum& value() const;
};

// All eigenvalues of the balanced companion matrix.
std::vector<std::complex<double>> companion_eigenvalues(const MonicPolynomial& q);

// Roots of q via companion eigenvalues, accepted as real up to the
// tolerances in `options`; sorted descending on success.
RealRootResult real_roots(const MonicPolynomial& q, const RealRootOptions& options = {});
// Same for a general polynomial; leading coefficients are trimmed with
// rel_trim, a constant polynomial yields an empty spectrum.
RealRootResult real_roots(const Polynomial& p, const RealRootOptions& options = {},
                          double rel_trim = 1e-14);

// Coefficients c_0..c_n of the interpolant through (nodes[k], values[k]).
// The system is solved in the variable t / scale.
std::vector<double> interpolate_monomial(std::span<const double> nodes,
                                         std::span<const double> values, double scale);

// Chebyshev points of the first kind scaled to [-radius, radius].
std::vector<double> chebyshev_nodes(int count, double radius);

}  // namespace hyperbolic
