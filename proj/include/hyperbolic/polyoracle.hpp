#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperbolic/types.hpp"
#include "hyperbolic/univariate.hpp"

namespace hyperbolic {

// Homogeneous polynomial stored term by term; exponent vectors have length m
// and sum to n.
struct DensePolynomial {
  int m = 0;
  int n = 0;
  std::map<std::vector<int>, double> terms;

  double evaluate(const Point& x) const;
  double partial(const Point& x, int i) const;
};

// det(sum_j x_j B_j) with M(e) = I. When the input pencil has M(e) positive
// definite but not the identity, every B_j has been replaced by W B_j W with
// W = M(e)^{-1/2}; `normalized` and `input_det_direction` = det M(e) record it.
struct DeterminantalPolynomial {
  int n = 0;
  int m = 0;
  std::vector<Matrix> pencil;
  Point direction;
  bool normalized = false;
  double input_det_direction = 1.0;

  Matrix pencil_at(const Point& x) const;
};

// z_1 * ... * z_n, direction (1, ..., 1).
struct ProductPolynomial {
  int n = 0;
};

enum class OracleKind { dense, determinantal, product };
std::string to_string(OracleKind kind);

class HyperbolicOracle {
 public:
  // Rejects |p(e) - 1| > 1e-9.
  static HyperbolicOracle dense(DensePolynomial poly, Point direction);
  // Matrices must be symmetric and M(e) positive definite.
  static HyperbolicOracle determinantal(std::vector<Matrix> matrices, Point direction);
  static HyperbolicOracle product(int n);
  // det on symmetric n x n matrices in the coordinates of
  // {E_ii} followed by {E_ij + E_ji : i < j}; direction is the identity.
  static HyperbolicOracle symmetric_matrices(int n);

  int degree() const { return n_; }
  int dimension() const { return m_; }
  const Point& direction() const { return e_; }
  OracleKind kind() const;

  const DensePolynomial* as_dense() const { return std::get_if<DensePolynomial>(&form_); }
  const DeterminantalPolynomial* as_determinantal() const {
    return std::get_if<DeterminantalPolynomial>(&form_);
  }
  const ProductPolynomial* as_product() const { return std::get_if<ProductPolynomial>(&form_); }

 private:
  using Form = std::variant<DensePolynomial, DeterminantalPolynomial, ProductPolynomial>;
  HyperbolicOracle(Form form, int n, int m, Point e)
      : form_(std::move(form)), n_(n), m_(m), e_(std::move(e)) {}

  Form form_;
  int n_ = 0;
  int m_ = 0;
  Point e_;
};

// Coordinates of a symmetric matrix for HyperbolicOracle::symmetric_matrices.
Point matrix_to_point(const Matrix& a);
Matrix point_to_matrix(const Point& x, int n);

double evaluate(const HyperbolicOracle& oracle, const Point& x);

// Coefficients of t -> p(t d + x), ascending, length n + 1.
Polynomial univariate_restriction(const HyperbolicOracle& oracle, const Point& x, const Point& d);

// Roots of p(x - t d) = 0, descending. d must be e-positive.
RootSpectrum roots_in_direction(const HyperbolicOracle& oracle, const Point& x, const Point& d,
                                double tol = 1e-8);
// Same roots through the companion matrix of the restriction, for every form.
RootSpectrum roots_by_restriction(const HyperbolicOracle& oracle, const Point& x, const Point& d,
                                  double tol = 1e-8);

// c_{n-1} / c_n of t -> p(t d + x). Throws PreconditionError when p(d) = 0.
double trace_in_direction(const HyperbolicOracle& oracle, const Point& x, const Point& d);
// p(d) < 1e-12: traces against d are poorly conditioned.
bool near_degenerate_direction(const HyperbolicOracle& oracle, const Point& d);

// Number of direction-e roots above tol * max(1, lambda_1).
int p_rank(const HyperbolicOracle& oracle, const Point& x, double tol = 1e-9);

enum class ConeClass { positive, nonnegative, outside };
std::string to_string(ConeClass c);
ConeClass cone_membership(const HyperbolicOracle& oracle, const Point& x, double tol = 1e-9);

struct HyperbolicitySample {
  bool verdict = true;
  std::optional<Point> counterexample;
};
HyperbolicitySample hyperbolicity_sample_test(const HyperbolicOracle& oracle, int num_samples,
                                              std::uint64_t seed, double tol = 1e-8);

// dp/dalpha_i; exact for dense and product forms.
double partial_derivative(const HyperbolicOracle& oracle, const Point& alpha, int i);

}  // namespace hyperbolic
