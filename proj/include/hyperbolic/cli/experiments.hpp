#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace hyperbolic::cli {

struct SuiteConfig {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int max_iters = 10000;
  int parallelism = 1;
  int trials = 0;  // 0 selects the suite default
};

struct TrialOutcome {
  bool failed = false;
  double slack = 0.0;  // signed margin of the checked inequality; negative is a violation
  std::string note;
};

struct SuiteSummary {
  std::string suite;
  int trials = 0;
  int failures = 0;
  double worst_slack = 0.0;
  std::vector<int> failed_trials;  // first 20
  std::vector<std::string> notes;  // notes of the failed trials, same order
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
int default_trials(const std::string& suite);

// Trial i uses seed + i; results are aggregated in trial order.
SuiteSummary run_suite(const std::string& suite, const SuiteConfig& config);

// Runs body(i) for i in [0, count) on `workers` threads; out[i] holds body(i).
template <class T>
std::vector<T> parallel_map(int count, int workers, const std::function<T(int)>& body) {
  std::vector<T> out(count);
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) out[i] = body(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace hyperbolic::cli
