#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/scaling.hpp"

namespace hyperbolic {

std::string to_string(CapacityStatus s) {
  switch (s) {
    case CapacityStatus::converged: return "converged";
    case CapacityStatus::zero_capacity: return "zero_capacity";
    case CapacityStatus::iteration_limit: return "iteration_limit";
  }
  return "iteration_limit";
}

namespace {

Point weighted_sum(const PointTuple& x, const Vector& a) {
  Point d = Point::Zero(x[0].size());
  for (std::size_t i = 0; i < x.size(); ++i) d += std::exp(a(i)) * x[i];
  return d;
}

// ln p(d(a)), or +inf outside the region where p(d(a)) > 0.
double objective_value(const HyperbolicOracle& oracle, const PointTuple& x, const Vector& a) {
  const double v = evaluate(oracle, weighted_sum(x, a));
  return v > 0.0 ? std::log(v) : std::numeric_limits<double>::infinity();
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CapacityObjective capacity_objective(const HyperbolicOracle& oracle, const PointTuple& x, const Vector& a) {
  if (a.size() != static_cast<Eigen::Index>(x.size())) throw InputError("a must have one entry per point");
  CapacityObjective out;
  const Point d = weighted_sum(x, a);
  const double pd = evaluate(oracle, d);
  if (!(pd > 0.0)) throw PreconditionError("p(sum e^{a_i} x_i) must be positive");
  out.g = std::log(pd);
  out.gradient.resize(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.gradient(i) = trace_in_direction(oracle, Point(std::exp(a(i)) * x[i]), d);
  return out;
}

CapacityResult capacity(const HyperbolicOracle& oracle, const PointTuple& x, const CapacityOptions& options) {
  if (x.size() == 0) throw InputError("tuple is empty");
  for (const auto& p : x.points) {
    if (p.size() != oracle.dimension()) throw InputError("tuple point dimension differs from m");
    if (cone_membership(oracle, p) == ConeClass::outside)
      throw PreconditionError("capacity needs e-nonnegative points");
  }
  const Eigen::Index k = static_cast<Eigen::Index>(x.size());
  CapacityResult result;
  const auto rank = edmonds_rado_check(oracle, x, options.rank_tol);
  if (!rank.holds) {
    result.status = CapacityStatus::zero_capacity;
    result.rank_witness = rank.witness;
    result.minimizer.assign(k, 1.0);
    result.log_value = -std::numeric_limits<double>::infinity();
    return result;
  }

  const double floor = std::log(1e-14 * evaluate(oracle, x.sum()));
  Vector a = Vector::Zero(k);
  CapacityObjective cur = capacity_objective(oracle, x, a);
  Vector grad = cur.gradient.array() - cur.gradient.mean();
  Vector prev_a, prev_grad;
  double step = 1.0;
  result.status = CapacityStatus::iteration_limit;
  int it = 0;
  for (; it < options.max_iters; ++it) {
    if (grad.norm() <= options.tol) {
      result.status = CapacityStatus::converged;
      break;
    }
    if (cur.g < floor) {
      result.status = CapacityStatus::zero_capacity;
      break;
    }
    if (it > 0) {
      // Barzilai-Borwein trial step.
      const Vector s = a - prev_a, y = grad - prev_grad;
      const double sy = s.dot(y);
      step = (sy > 0.0) ? s.squaredNorm() / sy : 1.0;
    }
    const double slope = grad.squaredNorm();
    const double first_step = step;
    Vector trial;
    bool accepted = false;
    for (int halvings = 0; halvings < 60 && !accepted; ++halvings) {
      trial = a - step * grad;
      trial.array() -= trial.mean();
      accepted = objective_value(oracle, x, trial) <= cur.g - 1e-4 * step * slope;
      if (!accepted) step *= 0.5;
    }
    CapacityObjective next;
    if (accepted) {
      next = capacity_objective(oracle, x, trial);
    } else {
      // Near the minimum the decrease in g falls below rounding; accept the
      // trial step when it shrinks the projected gradient instead.
      trial = a - first_step * grad;
      trial.array() -= trial.mean();
      if (!std::isfinite(objective_value(oracle, x, trial))) break;
      next = capacity_objective(oracle, x, trial);
      const Vector next_grad = next.gradient.array() - next.gradient.mean();
      if (!(next_grad.norm() < grad.norm())) break;
      step = first_step;
    }
    prev_a = a;
    prev_grad = grad;
    a = trial;
    cur = std::move(next);
    grad = cur.gradient.array() - cur.gradient.mean();
  }
  if (result.status == CapacityStatus::iteration_limit && grad.norm() <= options.tol)
    result.status = CapacityStatus::converged;
  a.array() -= a.mean();
  cur = capacity_objective(oracle, x, a);
  grad = cur.gradient.array() - 1.0;
  result.iterations = it;
  result.log_value = cur.g;
  result.value = std::exp(cur.g);
  result.gradient_norm = grad.norm();
  result.minimizer.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) result.minimizer[i] = std::exp(a(i));
  if (result.status == CapacityStatus::zero_capacity) result.value = 0.0;
  return result;
}

Composition convex_combination(const std::vector<Composition>& comps, const std::vector<double>& weights) {
  if (comps.empty() || comps.size() != weights.size())
    throw InputError("need one weight per composition");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InputError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("weights must sum to 1");
  const std::size_t k = comps.front().size();
  Composition r0;
  r0.entries.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].size() != k) throw InputError("compositions differ in length");
      acc += weights[i] * comps[i][j];
    }
    const double rounded = std::round(acc);
    if (std::abs(acc - rounded) > 1e-9) throw InputError("convex combination is not integral");
    r0.entries[j] = static_cast<int>(rounded);
  }
  return r0;
}

ConcavityReport capacity_concavity_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                         const std::vector<Composition>& comps,
                                         const std::vector<double>& weights, const CapacityOptions& options) {
  const Composition r0 = convex_combination(comps, weights);
  ConcavityReport report;
  report.lhs = capacity(oracle, repeated_tuple(x, r0), options).value;
  double log_rhs = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const double c = capacity(oracle, repeated_tuple(x, comps[i]), options).value;
    log_rhs += weights[i] * (c > 0.0 ? std::log(c) : -std::numeric_limits<double>::infinity());
  }
  report.rhs = std::exp(log_rhs);
  report.holds = report.lhs >= report.rhs * (1.0 - 1e-6);
  return report;
}

ConcavityReport mixed_value_concavity_check(const HyperbolicOracle& oracle, const PointTuple& x,
                                            const std::vector<Composition>& comps,
                                            const std::vector<double>& weights) {
  const Composition r0 = convex_combination(comps, weights);
  const int n = r0.total();
  ConcavityReport report;
  report.lhs = mixed_value(oracle, repeated_tuple(x, r0));
  double log_rhs = std::log(factorial(n)) - n * std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (weights[i] == 0.0) continue;
    const double v = mixed_value(oracle, repeated_tuple(x, comps[i]));
    log_rhs += weights[i] * (v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity());
  }
  report.rhs = std::exp(log_rhs);
  report.holds = report.lhs >= report.rhs * (1.0 - 1e-6) - 1e-12;
  return report;
}

double vdw_ratio(const HyperbolicOracle& oracle, const PointTuple& x, const CapacityOptions& options) {
  const CapacityResult cap = capacity(oracle, x, options);
  if (cap.status == CapacityStatus::zero_capacity || !(cap.value > 0.0))
    throw PreconditionError("van der Waerden ratio needs positive capacity");
  return mixed_value(oracle, x) / cap.value;
}

Inequality23Report inequality23_check(const HyperbolicOracle& q, const Point& alpha, double tol) {
  if (alpha.size() != q.dimension()) throw InputError("alpha dimension differs from m");
  if (!(alpha.minCoeff() > 0.0)) throw InputError("alpha must be strictly positive");
  Point inv(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    const double g = partial_derivative(q, alpha, static_cast<int>(i));
    if (!(g > 0.0)) throw PreconditionError("partial derivative " + std::to_string(i) + " is not positive");
    inv(i) = 1.0 / g;
  }
  Inequality23Report report;
  report.lhs = evaluate(q, inv);
  report.rhs = std::pow(evaluate(q, alpha), -(q.degree() - 1));
  report.holds = report.lhs <= report.rhs * (1.0 + tol);
  return report;
}

}  // namespace hyperbolic
