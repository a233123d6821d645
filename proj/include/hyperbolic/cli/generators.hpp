#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperbolic/polyoracle.hpp"
#include "hyperbolic/univariate.hpp"

namespace hyperbolic::cli {

using Rng = std::mt19937_64;

// G G^T + 1e-6 I with G standard normal n x n.
std::vector<Matrix> psd_tuple(int n, Rng& rng);
// G G^T with G standard normal n x rank; exactly rank-deficient for rank < n.
Matrix low_rank_psd(int n, int rank, Rng& rng);

struct DoublyStochasticTuple {
  std::vector<Matrix> matrices;
  int hsi_iterations = 0;
  double defect = 0.0;
};
// HSI on a psd tuple until defect < 1e-10; with `normalize` the tuple is then
// congruence-mapped so that its sum is I and each trace is 1.
DoublyStochasticTuple doubly_stochastic_tuple(int n, Rng& rng, bool normalize = true);

struct RankDeficientTuple {
  std::vector<Matrix> matrices;
  std::vector<int> witness;  // 0-based
};
// x_1 = x_2 = v v^T, remaining points positive definite; needs n >= 3.
RankDeficientTuple rank_deficient_tuple(int n, Rng& rng);

struct GeneratedPair {
  MonicPolynomial q, r;
  std::vector<double> roots;     // of q, descending
  std::vector<double> residues;  // r(lambda_k) / q'(lambda_k)
};
// q with roots spaced in [0.5, 1.5], r = q + sum a_k prod_{j != k}(x - lambda_j),
// |a_k| in [0.2, 2]; positive residues, or mixed signs with both present.
GeneratedPair hyperbolic_pair(int n, Rng& rng);
GeneratedPair nonhyperbolic_pair(int n, Rng& rng);

// Entries uniform in [0.1, 2].
Matrix positive_matrix(int n, Rng& rng);
// Entries uniform in [0.1, 2] kept with probability `density`, zero otherwise.
Matrix sparse_nonnegative_matrix(int n, double density, Rng& rng);

// e_n(z_1..z_m) / C(m, n), direction (1, ..., 1).
HyperbolicOracle elementary_symmetric_oracle(int n, int m);
// prod_i (l_i . z) with positive l_i, normalized at (1, ..., 1).
HyperbolicOracle linear_forms_oracle(int n, int m, Rng& rng);

struct GeneratorSpec {
  std::string kind;
  int n = 0;
  nlohmann::json params = nlohmann::json::object();
};

inline const std::vector<std::string>& generator_kinds() {
  static const std::vector<std::string> kinds{"psd_tuple", "doubly_stochastic_tuple", "rank_deficient_tuple",
                                              "hyperbolic_pair", "nonhyperbolic_pair"};
  return kinds;
}

// {"generator":{...},"instance":{...},"metadata":{...}}; self-verified.
nlohmann::json generate(const GeneratorSpec& spec, std::uint64_t seed);
// Reloads the instance and re-checks the property its kind promises.
bool revalidate(const nlohmann::json& doc);

}  // namespace hyperbolic::cli
