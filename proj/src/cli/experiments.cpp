#include "hyperbolic/cli/experiments.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hyperbolic/cli/generators.hpp"
#include "hyperbolic/errors.hpp"
#include "hyperbolic/interlace.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/scaling.hpp"

namespace hyperbolic::cli {

using nlohmann::json;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double vdw_constant(int n) { return factorial(n) / std::pow(static_cast<double>(n), n); }

PointTuple as_points(const std::vector<Matrix>& matrices) {
  PointTuple x;
  for (const auto& a : matrices) x.points.push_back(matrix_to_point(a));
  return x;
}

Matrix random_symmetric(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  return 0.5 * (a + a.transpose());
}

// An oracle of kind index % 3 with an e-nonnegative (or e-positive) n-tuple.
struct Instance {
  HyperbolicOracle oracle;
  PointTuple tuple;
  std::string label;
};

Instance mixed_kind_instance(int index, int n, Rng& rng, bool positive) {
  switch (index % 3) {
    case 0: {
      std::vector<Matrix> mats;
      std::uniform_int_distribution<int> rank(1, n);
      if (positive) {
        mats = psd_tuple(n, rng);
      } else {
        for (int i = 0; i < n; ++i) mats.push_back(low_rank_psd(n, rank(rng), rng));
      }
      return {HyperbolicOracle::symmetric_matrices(n), as_points(mats), "determinantal"};
    }
    case 1: {
      const Matrix a = positive ? positive_matrix(n, rng) : sparse_nonnegative_matrix(n, 0.6, rng);
      return {HyperbolicOracle::product(n), columns_as_tuple(a), "product"};
    }
    default: {
      const int m = n + 1;
      auto oracle = ((index / 3) % 2 == 0) ? elementary_symmetric_oracle(n, m) : linear_forms_oracle(n, m, rng);
      std::uniform_real_distribution<double> u(positive ? 0.1 : 0.0, 1.0);
      std::bernoulli_distribution zero(positive ? 0.0 : 0.3);
      PointTuple x;
      for (int i = 0; i < n; ++i) {
        Point p(m);
        for (int j = 0; j < m; ++j) {
          const double v = u(rng);
          p(j) = zero(rng) ? 0.0 : v;
        }
        x.points.push_back(p);
      }
      return {std::move(oracle), std::move(x), "dense"};
    }
  }
}

TrialOutcome af_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 2 + (index / 3) % 4;
  const auto inst = mixed_kind_instance(index, n, rng, false);
  const AfReport r = af_check(inst.oracle, inst.tuple);
  TrialOutcome out;
  out.slack = r.scale > 0.0 ? r.residual / r.scale : 0.0;
  out.failed = !r.holds(cfg.tol);
  if (out.failed) out.note = inst.label + " n=" + std::to_string(n);
  return out;
}

TrialOutcome logconcavity_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 2 + (index / 3) % 4;
  const auto inst = mixed_kind_instance(index, n, rng, true);
  const Point& x = inst.tuple[0];
  const Point y = inst.tuple[1];
  const auto profile = log_concavity_profile(inst.oracle, x, y);
  TrialOutcome out;
  out.slack = std::numeric_limits<double>::infinity();
  for (double v : profile)
    if (!(v > 0.0)) {
      out.failed = true;
      out.note = "nonpositive M(i)";
    }
  for (int i = 1; i < n; ++i) {
    const double lhs = profile[i] * profile[i], rhs = profile[i - 1] * profile[i + 1];
    const double rel = (lhs - rhs) / std::max(lhs, rhs);
    out.slack = std::min(out.slack, rel);
    if (rel < -cfg.tol) {
      out.failed = true;
      out.note = inst.label + " chain violated at i=" + std::to_string(i);
    }
  }
  const double lx = std::log(evaluate(inst.oracle, x)), ly = std::log(evaluate(inst.oracle, y));
  for (int k = 1; k <= 9; ++k) {
    const double a = 0.1 * k;
    const double lhs = std::log(evaluate(inst.oracle, Point(a * x + (1 - a) * y)));
    const double rhs = a * lx + (1 - a) * ly;
    if (lhs < rhs - cfg.tol * (1.0 + std::abs(rhs))) {
      out.failed = true;
      out.note = inst.label + " ln p concavity violated";
    }
  }
  return out;
}

TrialOutcome vdw_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 2 + index % 3;
  const auto ds = doubly_stochastic_tuple(n, rng);
  const auto oracle = HyperbolicOracle::symmetric_matrices(n);
  const PointTuple x = as_points(ds.matrices);
  const double d = mixed_value(oracle, x);
  CapacityOptions copt;
  copt.max_iters = cfg.max_iters;
  const CapacityResult cap = capacity(oracle, x, copt);
  const double pd = evaluate(oracle, x.sum());
  TrialOutcome out;
  out.slack = d - vdw_constant(n);
  const auto fail = [&](const std::string& why) {
    out.failed = true;
    out.note = why + " n=" + std::to_string(n);
  };
  if (d < vdw_constant(n) - 1e-6) fail("mixed discriminant below n!/n^n");
  if (d > cap.value + 1e-6) fail("D > Cap");
  if (cap.value > d / vdw_constant(n) + 1e-6) fail("Cap > n^n/n! D");
  if (std::abs(cap.value - pd) / pd > 1e-5) fail("Cap differs from p(d)");
  return out;
}

TrialOutcome lidskii_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 1 + index % 6;
  const Matrix a = random_symmetric(n, rng), b = random_symmetric(n, rng);
  const double scale = 1.0 + a.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
  const auto r = lidskii_experiment(a, b, cfg.tol * scale);
  TrialOutcome out;
  out.slack = *std::min_element(r.prefix_gaps.begin(), r.prefix_gaps.end());
  out.failed = !r.majorized;
  return out;
}

TrialOutcome newton_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 2 + (index / 2) % 4;
  HyperbolicOracle oracle = HyperbolicOracle::product(n);
  PointTuple x;
  std::string label;
  if (index % 2 == 0) {
    std::uniform_int_distribution<int> rank(1, n);
    std::vector<Matrix> mats;
    for (int i = 0; i < n; ++i) mats.push_back(low_rank_psd(n, rank(rng), rng));
    oracle = HyperbolicOracle::symmetric_matrices(n);
    x = as_points(mats);
    label = "determinantal";
  } else {
    x = columns_as_tuple(sparse_nonnegative_matrix(n, 0.5, rng));
    label = "product";
  }
  const auto r = newton_saturation_check(oracle, x, cfg.tol);
  TrialOutcome out;
  out.slack = -static_cast<double>(r.violations.size());
  out.failed = !r.saturated;
  if (out.failed) out.note = label + " n=" + std::to_string(n);
  return out;
}

bool energy_monotone(const std::vector<double>& energy) {
  const double scale = energy.empty() ? 1.0 : std::abs(energy.front());
  for (std::size_t j = 1; j < energy.size(); ++j)
    if (energy[j] > energy[j - 1] + 1e-10 * scale) return false;
  return true;
}

TrialOutcome hsi_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  TrialOutcome out;
  if (index % 2 == 0) {
    const int n = 2 + (index / 2) % 4;
    const auto oracle = HyperbolicOracle::symmetric_matrices(n);
    ScalingOptions opt;
    opt.max_iters = cfg.max_iters;
    const auto r = hsi_run(oracle, as_points(psd_tuple(n, rng)), opt);
    out.slack = 1.0 / n - r.final_state.defect;
    if (!r.first_below_inverse_n || !r.converged) {
      out.failed = true;
      out.note = "positive tuple did not converge n=" + std::to_string(n);
    }
    if (!energy_monotone(r.energy_history)) {
      out.failed = true;
      out.note = "p(d_j) increased n=" + std::to_string(n);
    }
  } else {
    const int n = 3 + (index / 2) % 3;
    const auto oracle = HyperbolicOracle::symmetric_matrices(n);
    ScalingOptions opt;
    opt.max_iters = 1000;
    opt.continue_after_zero = true;
    const auto r = hsi_run(oracle, as_points(rank_deficient_tuple(n, rng).matrices), opt);
    const double lowest = *std::min_element(r.defect_history.begin(), r.defect_history.end());
    out.slack = lowest - 1.0 / n;
    if (r.verdict != CapacityVerdict::zero || r.first_below_inverse_n) {
      out.failed = true;
      out.note = "rank-deficient tuple not flagged n=" + std::to_string(n);
    }
    if (!energy_monotone(r.energy_history)) {
      out.failed = true;
      out.note = "p(d_j) increased n=" + std::to_string(n);
    }
  }
  return out;
}

TrialOutcome interlace_trial(int index, Rng& rng, const SuiteConfig& cfg, int total) {
  const int n = 2 + index % 7;
  const bool hyperbolic = index < total / 2;
  const auto pair = hyperbolic ? hyperbolic_pair(n, rng) : nonhyperbolic_pair(n, rng);
  const auto a = obreschkoff_pair_test(pair.q, pair.r.to_polynomial());
  const auto b = sampled_pencil_test(pair.q, pair.r.to_polynomial(), 64, 1e-8);
  TrialOutcome out;
  out.slack = hyperbolic ? b.min_root_gap : 0.0;
  const bool definite = a.verdict != PairVerdict::inconclusive && b.verdict != PairVerdict::inconclusive;
  if (definite && a.verdict != b.verdict) {
    out.failed = true;
    out.note = "verdicts disagree n=" + std::to_string(n) + " obreschkoff=" + to_string(a.verdict);
  }
  (void)cfg;
  return out;
}

TrialOutcome capacity_concavity_trial(int index, Rng& rng, const SuiteConfig& cfg) {
  const int n = 2 + index % 3;
  const auto oracle = HyperbolicOracle::symmetric_matrices(n);
  const PointTuple x = as_points(psd_tuple(n, rng));
  // r1 = r0 + v, r2 = r0 - v with sum v = 0 keeps r0 the midpoint.
  const auto comps = compositions(n, n);
  std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
  Composition r0 = comps[pick(rng)], r1 = r0, r2 = r0;
  std::uniform_int_distribution<int> slot(0, n - 1);
  for (int moves = 0; moves < n; ++moves) {
    const int i = slot(rng), j = slot(rng);
    if (i == j || r2.entries[i] == 0 || r1.entries[j] == 0) continue;
    ++r1.entries[i];
    --r1.entries[j];
    --r2.entries[i];
    ++r2.entries[j];
  }
  CapacityOptions copt;
  copt.max_iters = cfg.max_iters;
  const auto cap = capacity_concavity_check(oracle, x, {r1, r2}, {0.5, 0.5}, copt);
  const auto mix = mixed_value_concavity_check(oracle, x, {r1, r2}, {0.5, 0.5});
  TrialOutcome out;
  out.slack = std::min(cap.rhs > 0 ? cap.lhs / cap.rhs - 1.0 : 0.0, mix.rhs > 0 ? mix.lhs / mix.rhs - 1.0 : 0.0);
  if (!cap.holds) {
    out.failed = true;
    out.note = "capacity concavity violated";
  }
  if (!mix.holds) {
    out.failed = true;
    out.note = "refined mixed-discriminant bound violated";
  }
  return out;
}

}  // namespace

json SuiteSummary::to_json() const {
  return {{"suite", suite},      {"trials", trials},     {"failures", failures},
          {"worst_slack", worst_slack}, {"failed_trials", failed_trials}, {"notes", notes}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"af",      "vdw",       "lidskii",      "newton",
                                              "hsi",     "interlace", "logconcavity", "capacity-concavity"};
  return names;
}

int default_trials(const std::string& suite) {
  static const std::map<std::string, int> defaults{{"af", 300},      {"vdw", 200},       {"lidskii", 500},
                                                   {"newton", 200},  {"hsi", 100},       {"interlace", 1000},
                                                   {"logconcavity", 300}, {"capacity-concavity", 60}};
  const auto it = defaults.find(suite);
  if (it == defaults.end()) throw InputError("unknown suite \"" + suite + "\"");
  return it->second;
}

SuiteSummary run_suite(const std::string& suite, const SuiteConfig& config) {
  const int trials = config.trials > 0 ? config.trials : default_trials(suite);
  const std::function<TrialOutcome(int, Rng&)> trial = [&]() -> std::function<TrialOutcome(int, Rng&)> {
    if (suite == "af") return [&](int i, Rng& r) { return af_trial(i, r, config); };
    if (suite == "vdw") return [&](int i, Rng& r) { return vdw_trial(i, r, config); };
    if (suite == "lidskii") return [&](int i, Rng& r) { return lidskii_trial(i, r, config); };
    if (suite == "newton") return [&](int i, Rng& r) { return newton_trial(i, r, config); };
    if (suite == "hsi") return [&](int i, Rng& r) { return hsi_trial(i, r, config); };
    if (suite == "interlace") return [&, trials](int i, Rng& r) { return interlace_trial(i, r, config, trials); };
    if (suite == "logconcavity") return [&](int i, Rng& r) { return logconcavity_trial(i, r, config); };
    if (suite == "capacity-concavity") return [&](int i, Rng& r) { return capacity_concavity_trial(i, r, config); };
    throw InputError("unknown suite \"" + suite + "\"");
  }();

  const auto outcomes = parallel_map<TrialOutcome>(trials, config.parallelism, [&](int i) {
    Rng rng(config.seed + static_cast<std::uint64_t>(i));
    try {
      return trial(i, rng);
    } catch (const std::exception& e) {
      TrialOutcome out;
      out.failed = true;
      out.slack = -std::numeric_limits<double>::infinity();
      out.note = e.what();
      return out;
    }
  });

  SuiteSummary summary;
  summary.suite = suite;
  summary.trials = trials;
  summary.worst_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    summary.worst_slack = std::min(summary.worst_slack, outcomes[i].slack);
    if (!outcomes[i].failed) continue;
    ++summary.failures;
    if (summary.failed_trials.size() < 20) {
      summary.failed_trials.push_back(i);
      summary.notes.push_back(outcomes[i].note);
    }
  }
  return summary;
}

}  // namespace hyperbolic::cli
