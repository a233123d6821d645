#include "hyperbolic/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <Eigen/Cholesky>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

std::string to_string(CapacityVerdict v) {
  switch (v) {
    case CapacityVerdict::positive: return "positive";
    case CapacityVerdict::zero: return "zero";
    case CapacityVerdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

void check_tuple(const HyperbolicOracle& oracle, const PointTuple& x) {
  if (x.size() == 0) throw InputError("tuple is empty");
  for (const auto& p : x.points)
    if (p.size() != oracle.dimension()) throw InputError("tuple point dimension differs from m");
}

}  // namespace

ScalingState scaling_state(const HyperbolicOracle& oracle, const PointTuple& x) {
  check_tuple(oracle, x);
  ScalingState s;
  s.tuple = x;
  s.d = x.sum();
  // Long runs on tuples without total support spread the roots of d over many
  // orders of magnitude, so positivity is judged at a tight relative tolerance.
  if (cone_membership(oracle, s.d, 1e-14) != ConeClass::positive)
    throw PreconditionError("sum of the tuple is not e-positive");
  s.traces.reserve(x.size());
  for (const auto& p : x.points) {
    const double t = trace_in_direction(oracle, p, s.d);
    s.traces.push_back(t);
    s.defect += (t - 1.0) * (t - 1.0);
  }
  return s;
}

double ds_defect(const HyperbolicOracle& oracle, const PointTuple& x) { return scaling_state(oracle, x).defect; }

ScalingState hs_step(const HyperbolicOracle& oracle, const ScalingState& state) {
  PointTuple next = state.tuple;
  double f = 1.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double t = state.traces[i];
    if (!(t > 0.0)) throw PreconditionError("zero trace for point " + std::to_string(i));
    next[i] /= t;
    f *= t;
  }
  ScalingState s = scaling_state(oracle, next);
  s.multiplier = state.multiplier / f;
  return s;
}

PointTuple hs_map(const HyperbolicOracle& oracle, const PointTuple& x) {
  return hs_step(oracle, scaling_state(oracle, x)).tuple;
}

EdmondsRadoReport edmonds_rado_check(const HyperbolicOracle& oracle, const PointTuple& x, double tol) {
  check_tuple(oracle, x);
  const int n = static_cast<int>(x.size());
  if (n > kEdmondsRadoMaxDegree) throw BudgetError("Edmonds-Rado enumeration is capped at n <= 24");
  EdmondsRadoReport report;
  std::vector<int> subset;
  std::vector<Point> sums{Point::Zero(oracle.dimension())};
  // Depth-first over ascending index lists visits subsets lexicographically.
  std::vector<int> next_index{0};
  while (!next_index.empty()) {
    int& i = next_index.back();
    if (i >= n) {
      next_index.pop_back();
      sums.pop_back();
      if (!subset.empty()) subset.pop_back();
      continue;
    }
    const int idx = i++;
    subset.push_back(idx);
    sums.push_back(sums.back() + x[idx]);
    if (p_rank(oracle, sums.back(), tol) < static_cast<int>(subset.size())) {
      report.holds = false;
      report.witness = subset;
      return report;
    }
    next_index.push_back(idx + 1);
  }
  return report;
}

namespace {

// Determinantal runs on PSD points carry factors B_i = F_i F_i^T with
// B_i = G (c_i M(x_i)) G^T and sum B_i = I. Traces and the defect are invariant
// under the congruence, p(d_j) = det(G)^{-2}, and the factors keep each rank
// exact, so d_j may approach the boundary for many steps without drift.
class WhitenedRun {
 public:
  // Null when some M(x_i) is not PSD at the rank tolerance.
  static std::optional<WhitenedRun> make(const DeterminantalPolynomial& det, const PointTuple& x0,
                                         double rank_tol) {
    WhitenedRun run;
    run.x0_ = x0;
    run.c_.assign(x0.size(), 1.0);
    for (const auto& p : x0.points) {
      const Eigen::SelfAdjointEigenSolver<Matrix> es(det.pencil_at(p));
      const Vector& ev = es.eigenvalues();
      const double cutoff = rank_tol * std::max(1.0, ev.maxCoeff());
      if (ev.minCoeff() < -cutoff) return std::nullopt;
      std::vector<int> keep;
      for (int k = 0; k < ev.size(); ++k)
        if (ev(k) > cutoff) keep.push_back(k);
      Matrix f(det.n, static_cast<Eigen::Index>(keep.size()));
      for (std::size_t k = 0; k < keep.size(); ++k)
        f.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(ev(keep[k]));
      run.f_.push_back(std::move(f));
    }
    if (!run.whiten()) throw PreconditionError("sum of the tuple is not e-positive");
    return run;
  }

  // False once sum B_i has no Cholesky factor, i.e. d_j left the cone numerically.
  bool step() {
    double f = 1.0;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const double t = traces_[i];
      if (!(t > 0.0)) throw PreconditionError("zero trace for point " + std::to_string(i));
      f_[i] /= std::sqrt(t);
      c_[i] /= t;
      f *= t;
    }
    multiplier_ /= f;
    return whiten();
  }

  double defect() const { return defect_; }
  double energy() const { return std::exp(-2.0 * log_det_g_); }
  double multiplier() const { return multiplier_; }

  ScalingState state() const {
    ScalingState s;
    s.tuple = x0_;
    for (std::size_t i = 0; i < c_.size(); ++i) s.tuple[i] *= c_[i];
    s.d = s.tuple.sum();
    s.traces = traces_;
    s.defect = defect_;
    s.multiplier = multiplier_;
    return s;
  }

 private:
  WhitenedRun() = default;

  bool whiten() {
    const Eigen::Index n = f_[0].rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& f : f_) sum.noalias() += f * f.transpose();
    const Eigen::LLT<Matrix> llt(sum);
    if (llt.info() != Eigen::Success) return false;
    const Matrix l = llt.matrixL();
    if (!(l.diagonal().minCoeff() > 0.0)) return false;
    for (auto& f : f_) f = l.triangularView<Eigen::Lower>().solve(f);
    log_det_g_ -= l.diagonal().array().log().sum();
    traces_.assign(f_.size(), 0.0);
    defect_ = 0.0;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      traces_[i] = f_[i].squaredNorm();
      defect_ += (traces_[i] - 1.0) * (traces_[i] - 1.0);
    }
    return true;
  }

  PointTuple x0_;
  std::vector<Matrix> f_;
  std::vector<double> c_;
  std::vector<double> traces_;
  double defect_ = 0.0;
  double log_det_g_ = 0.0;
  double multiplier_ = 1.0;
};

}  // namespace

ScalingReport hsi_run(const HyperbolicOracle& oracle, const PointTuple& x0, const ScalingOptions& options) {
  check_tuple(oracle, x0);
  if (options.max_iters < 0) throw InputError("max_iters must be nonnegative");
  const int n = static_cast<int>(x0.size());
  const double inverse_n = 1.0 / n;
  const double stop = std::min(inverse_n, options.threshold);
  ScalingReport report;
  report.rank_check = edmonds_rado_check(oracle, x0, options.rank_tol);
  if (!report.rank_check.holds) {
    report.verdict = CapacityVerdict::zero;
    if (!options.continue_after_zero || cone_membership(oracle, x0.sum()) != ConeClass::positive) {
      report.final_state.tuple = x0;
      return report;
    }
  }
  const bool zero = !report.rank_check.holds;
  const auto record = [&](double defect, double energy, double multiplier, int j) {
    report.defect_history.push_back(defect);
    report.energy_history.push_back(energy);
    report.multiplier_history.push_back(multiplier);
    if (!report.first_below_inverse_n && defect <= inverse_n) report.first_below_inverse_n = j;
  };
  double defect = 0.0;
  std::optional<WhitenedRun> whitened;
  if (const auto* det = oracle.as_determinantal()) whitened = WhitenedRun::make(*det, x0, options.rank_tol);
  if (whitened) {
    WhitenedRun& run = *whitened;
    record(run.defect(), run.energy(), run.multiplier(), 0);
    for (int j = 1; !(run.defect() <= stop && !zero) && j <= options.max_iters; ++j) {
      if (!run.step()) break;
      report.iterations = j;
      record(run.defect(), run.energy(), run.multiplier(), j);
    }
    report.final_state = run.state();
    defect = run.defect();
  } else {
    ScalingState state = scaling_state(oracle, x0);
    record(state.defect, evaluate(oracle, state.d), state.multiplier, 0);
    for (int j = 1; !(state.defect <= stop && !zero) && j <= options.max_iters; ++j) {
      try {
        state = hs_step(oracle, state);
      } catch (const PreconditionError&) {
        // d_j left the cone numerically; the run ends as if the budget ran out.
        if (j == 1) throw;
        break;
      }
      report.iterations = j;
      record(state.defect, evaluate(oracle, state.d), state.multiplier, j);
    }
    defect = state.defect;
    report.final_state = std::move(state);
  }
  if (!zero && defect <= stop) {
    report.converged = true;
    report.verdict = CapacityVerdict::positive;
  }
  return report;
}

Matrix classical_sinkhorn(const Matrix& a, int iters) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("sinkhorn needs a nonempty square matrix");
  if (!(a.minCoeff() > 0.0)) throw InputError("sinkhorn needs strictly positive entries");
  if (iters < 0) throw InputError("iteration count must be nonnegative");
  Matrix b = a;
  for (int it = 0; it < iters; ++it) {
    const Vector rows = b.rowwise().sum();
    for (int i = 0; i < b.rows(); ++i) b.row(i) /= rows(i);
    const Vector cols = b.colwise().sum().transpose();
    for (int j = 0; j < b.cols(); ++j) b.col(j) /= cols(j);
  }
  return b;
}

PointTuple columns_as_tuple(const Matrix& a) {
  PointTuple x;
  for (int j = 0; j < a.cols(); ++j) x.points.push_back(a.col(j));
  return x;
}

Matrix tuple_as_columns(const PointTuple& x) {
  Matrix a(x[0].size(), static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) a.col(j) = x[j];
  return a;
}

}  // namespace hyperbolic
