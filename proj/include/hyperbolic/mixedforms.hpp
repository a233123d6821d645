#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hyperbolic/polyoracle.hpp"
#include "hyperbolic/types.hpp"
#include "hyperbolic/univariate.hpp"

namespace hyperbolic {

inline constexpr int kMixedValueMaxDegree = 20;
inline constexpr int kSupportMaxDegree = 8;

// Called with (evaluations done, total) from the sequential reduction.
using ProgressCallback = std::function<void(std::uint64_t, std::uint64_t)>;

struct MixedValueDetail {
  double value = 0.0;
  double max_term = 0.0;  // max |p(sum b_i x_i)| over the sign vectors used
};

// 2^{-n} sum_b p(sum b_i x_i) prod b_i, summed over the half with b_n = +1.
MixedValueDetail mixed_value_detail(const HyperbolicOracle& oracle, const PointTuple& x,
                                    const ProgressCallback& progress = {});
double mixed_value(const HyperbolicOracle& oracle, const PointTuple& x,
                   const ProgressCallback& progress = {});

// Mixed value of det on n symmetric n x n matrices.
double mixed_discriminant(const std::vector<Matrix>& matrices);

// r_i copies of x_i, in order.
PointTuple repeated_tuple(const PointTuple& x, const Composition& r);

// All length-k nonnegative vectors with total n, descending lexicographic.
std::vector<Composition> compositions(int k, int n);

struct SupportEntry {
  Composition r;
  double value = 0.0;
};

struct SupportSet {
  std::vector<SupportEntry> members;  // in compositions() order
  double threshold = 0.0;

  bool empty() const { return members.empty(); }
  bool contains(const Composition& r) const;
};

// r in I(n,n) with M(X_r) > tol * n! * scale, scale = max(|p(sum x)|, largest
// polarization term seen over all r).
SupportSet support(const HyperbolicOracle& oracle, const PointTuple& x, double tol = 1e-9);

// r in the convex hull of S, decided by a phase-1 simplex at tolerance 1e-9.
bool polytope_membership(const Composition& r, const SupportSet& s);

struct SaturationReport {
  bool saturated = true;
  std::vector<Composition> violations;  // lattice points of CO(S) outside S
  SupportSet support;
};
SaturationReport newton_saturation_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                         double tol = 1e-9);

struct AfReport {
  double residual = 0.0;      // M(x1,x2,Y)^2 - M(x1,x1,Y) M(x2,x2,Y)
  // max(M(x1,x2,Y)^2, |M(x1,x1,Y) M(x2,x2,Y)|, and the same products of the
  // largest polarization terms)
  double scale = 0.0;
  bool inputs_nonnegative = true;
  bool holds(double tol = 1e-9) const { return residual >= -tol * scale; }
};
AfReport af_check(const HyperbolicOracle& oracle, const PointTuple& x);

// Coefficients of t -> M(x + t e (k times), tail), ascending, length k + 1.
// Tail points must be e-positive.
Polynomial phi_k(const HyperbolicOracle& oracle, const Point& x, const std::vector<Point>& tail, int k);

struct KHyperbolicReport {
  bool real_rooted = false;
  Polynomial phi;
  std::optional<RootSpectrum> roots;
  std::optional<double> discriminant;  // k = 2 only
};
KHyperbolicReport k_hyperbolic_check(const HyperbolicOracle& oracle, const Point& x,
                                     const std::vector<Point>& tail, int k, double tol = 1e-8);

// M(i) = mixed value of (x * i, y * (n - i)), i = 0..n. x, y must be e-positive.
std::vector<double> log_concavity_profile(const HyperbolicOracle& oracle, const Point& x, const Point& y);

}  // namespace hyperbolic
