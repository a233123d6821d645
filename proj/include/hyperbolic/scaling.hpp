#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperbolic/polyoracle.hpp"
#include "hyperbolic/types.hpp"

namespace hyperbolic {

inline constexpr int kEdmondsRadoMaxDegree = 24;

struct ScalingState {
  PointTuple tuple;
  Point d;                      // sum of the tuple
  std::vector<double> traces;   // tr_d(x_i)
  double defect = 0.0;          // sum (traces_i - 1)^2
  double multiplier = 1.0;      // product of F_j^{-1} over the steps taken so far
};

// State of X; d = sum X must be e-positive.
ScalingState scaling_state(const HyperbolicOracle& oracle, const PointTuple& x);

double ds_defect(const HyperbolicOracle& oracle, const PointTuple& x);

// x_i / tr_d(x_i). Throws PreconditionError on a nonpositive trace.
PointTuple hs_map(const HyperbolicOracle& oracle, const PointTuple& x);
ScalingState hs_step(const HyperbolicOracle& oracle, const ScalingState& state);

enum class CapacityVerdict { positive, zero, undetermined };
std::string to_string(CapacityVerdict v);

struct EdmondsRadoReport {
  bool holds = true;
  std::optional<std::vector<int>> witness;  // 0-based indices, ascending
};

// p_rank(sum_{i in S} x_i) >= |S| for all nonempty S, subsets visited in
// lexicographic order of their sorted index lists.
EdmondsRadoReport edmonds_rado_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                     double tol = 1e-9);

struct ScalingOptions {
  int max_iters = 10000;
  double threshold = 1e-10;
  double rank_tol = 1e-9;
  // Keep iterating after the rank precheck fails, to observe the defect.
  bool continue_after_zero = false;
};

struct ScalingReport {
  bool converged = false;
  int iterations = 0;                    // HS steps taken
  std::vector<double> defect_history;    // index j: defect of X_j
  std::vector<double> energy_history;    // index j: p(d_j)
  std::vector<double> multiplier_history;
  std::optional<int> first_below_inverse_n;  // first j with defect <= 1/n
  ScalingState final_state;
  CapacityVerdict verdict = CapacityVerdict::undetermined;
  EdmondsRadoReport rank_check;
};

ScalingReport hsi_run(const HyperbolicOracle& oracle, const PointTuple& x0, const ScalingOptions& options = {});

struct CapacityObjective {
  double g = 0.0;         // ln p(sum e^{a_i} x_i)
  Vector gradient;        // tr_d(e^{a_i} x_i)
};
CapacityObjective capacity_objective(const HyperbolicOracle& oracle, const PointTuple& x, const Vector& a);

enum class CapacityStatus { converged, zero_capacity, iteration_limit };
std::string to_string(CapacityStatus s);

struct CapacityOptions {
  double tol = 1e-8;
  int max_iters = 10000;
  double rank_tol = 1e-9;
};

struct CapacityResult {
  double value = 0.0;
  double log_value = 0.0;
  std::vector<double> minimizer;  // alpha_i = e^{a_i}, product 1
  double gradient_norm = 0.0;     // |tr - 1| at the minimizer
  int iterations = 0;
  CapacityStatus status = CapacityStatus::iteration_limit;
  std::optional<std::vector<int>> rank_witness;
};

CapacityResult capacity(const HyperbolicOracle& oracle, const PointTuple& x, const CapacityOptions& options = {});

struct ConcavityReport {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Cap(X_{r0}) >= prod Cap(X_{r_i})^{w_i} with r0 = sum w_i r_i integral.
ConcavityReport capacity_concavity_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                         const std::vector<Composition>& comps,
                                         const std::vector<double>& weights,
                                         const CapacityOptions& options = {});
// M(X_{r0}) >= prod M(X_{r_i})^{w_i} * n!/n^n.
ConcavityReport mixed_value_concavity_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                            const std::vector<Composition>& comps,
                                            const std::vector<double>& weights);
// The integral composition sum w_i r_i; throws InputError otherwise.
Composition convex_combination(const std::vector<Composition>& comps, const std::vector<double>& weights);

// M(X) / Cap(X); throws PreconditionError on zero capacity.
double vdw_ratio(const HyperbolicOracle& oracle, const PointTuple& x, const CapacityOptions& options = {});

struct Inequality23Report {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
// Q = the oracle in its own coordinates: Q(1 / grad Q(alpha)) <= Q(alpha)^{-(n-1)},
// compared as lhs <= rhs * (1 + tol).
Inequality23Report inequality23_check(const HyperbolicOracle& q, const Point& alpha, double tol = 1e-9);

// `iters` rounds of row normalization followed by column normalization.
Matrix classical_sinkhorn(const Matrix& a, int iters);

// Tuple of product-oracle points whose i-th point is column i of a.
PointTuple columns_as_tuple(const Matrix& a);
Matrix tuple_as_columns(const PointTuple& x);

}  // namespace hyperbolic
