#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperbolic/types.hpp"
#include "hyperbolic/univariate.hpp"

namespace hyperbolic {

enum class PairVerdict { hyperbolic, not_hyperbolic, inconclusive };
std::string to_string(PairVerdict v);

struct PairReport {
  PairVerdict verdict = PairVerdict::inconclusive;
  std::vector<double> residues;  // r(lambda_k) / q'(lambda_k), lambda sorted descending
  double constant_term = 0.0;    // A in r/q = A + sum a_k / (z - lambda_k)
  std::optional<std::pair<double, double>> counterexample_direction;
  RootSpectrum roots_of_q;
  // Smallest gap between consecutive roots over every real-rooted member
  // that was examined; only filled by the sampled test.
  double min_root_gap = 0.0;
};

struct PairTestOptions {
  double tol = 1e-8;
  double separation_tol = 1e-6;  // relative gap below which q's roots count as multiple
};

// Residue test on r/q; q must have simple real roots, deg r <= deg q.
PairReport obreschkoff_pair_test(const MonicPolynomial& q, const Polynomial& r,
                                 const PairTestOptions& options = {});

// Real-rootedness of x q + y r over (cos t, sin t), t = pi j / num_dirs, plus
// the degree-dropping direction (1, -1).
PairReport sampled_pencil_test(const MonicPolynomial& q, const Polynomial& r, int num_dirs = 64,
                               double tol = 1e-8);

// Monic degree-n representative spanning the same pencil as (q, r):
// r itself rescaled when deg r = n, q + r when deg r < n.
MonicPolynomial monic_partner(const MonicPolynomial& q, const Polynomial& r);

// x C_q + y C_r.
Matrix pencil_matrix(const MonicPolynomial& q, const MonicPolynomial& r, double x, double y);
// Coefficients (ascending) of det(t I - (x C_q + y C_r)).
std::vector<double> pencil_char_poly(const MonicPolynomial& q, const MonicPolynomial& r, double x,
                                     double y);

struct MajorizationReport {
  bool majorized = false;
  std::vector<double> prefix_gaps;  // prefix(v) - prefix(u), descending sorts
  double total_gap = 0.0;
};

// Is u majorized by v?
MajorizationReport majorization_check(std::vector<double> u, std::vector<double> v, double tol);

// lambda(A + B) - lambda(A) majorized by lambda(B).
MajorizationReport lidskii_experiment(const Matrix& a, const Matrix& b, double tol);

struct Triple {
  double x = 0.0, y = 0.0, z = 0.0;
};

enum class OrdConvention {
  sort_after_scaling,  // ORD = descending sort of (L * Lambda)
  scale_sorted,        // ORD = L * (descending Lambda), no re-sort
};

struct CorollaryOptions {
  double tol = 1e-8;
  OrdConvention ordering = OrdConvention::sort_after_scaling;
  // Shift P_{X+Delta} by delta_3 / K exactly as printed instead of (z + delta_3) / K.
  bool literal_shift = false;
};

struct CorollaryReport {
  MajorizationReport majorization;
  std::vector<double> ord_x, ord_x_delta, ord_delta;
};

CorollaryReport corollary_majorization_experiment(const MonicPolynomial& q, const MonicPolynomial& r,
                                                  const Triple& point, const Triple& delta,
                                                  const CorollaryOptions& options = {});

struct LineConvexityReport {
  bool convex = false;
  bool real_rooted = true;  // false when some P_a on the grid had a non-real root
  std::optional<bool> min_at_zero;          // b = 0, c = 1 variant only
  std::optional<bool> sum_constant;         // f_n constant; meaningful for c = 1
  std::optional<bool> majorization_chain;   // Lambda_a majorized by Lambda_b, ab >= 0, |a| <= |b|
  std::vector<double> values;               // f_k on the grid
  double worst_convexity_slack = 0.0;       // min over pairs of (mean - midpoint value)
};

// P_a(x) = q(x + b + c a) - a q'(x + b + c a); f_k(a) = sum of the k largest roots.
LineConvexityReport derivative_line_convexity(const MonicPolynomial& q, double b, double c, int k,
                                              const std::vector<double>& grid, double tol);

enum class SymmetricConvexKind { topk_sum, neg_bottomk_sum, max, sum_abs };

struct SymmetricConvexFunction {
  SymmetricConvexKind kind = SymmetricConvexKind::max;
  int k = 1;
  double operator()(const RootSpectrum& roots) const;
};

// P_a(x) = a q(x + b + c a) + (1 - a) r(x + b + c a); F(a) = f(roots of P_a).
LineConvexityReport symmetric_convex_line_check(const MonicPolynomial& q, const MonicPolynomial& r,
                                                double b, double c, const SymmetricConvexFunction& f,
                                                const std::vector<double>& grid, double tol);

}  // namespace hyperbolic
