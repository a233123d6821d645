#include "hyperbolic/cli/generators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/interlace.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/oracle_json.hpp"
#include "hyperbolic/scaling.hpp"

namespace hyperbolic::cli {

using nlohmann::json;

namespace {

Matrix normal_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

PointTuple as_points(const std::vector<Matrix>& matrices) {
  PointTuple x;
  for (const auto& a : matrices) x.points.push_back(matrix_to_point(a));
  return x;
}

std::vector<Matrix> as_matrices(const PointTuple& x, int n) {
  std::vector<Matrix> out;
  for (const auto& p : x.points) out.push_back(point_to_matrix(p, n));
  return out;
}

GeneratedPair residue_pair(int n, Rng& rng, bool mixed) {
  if (n < 1) throw InputError("pair degree must be >= 1");
  if (mixed && n < 2) throw InputError("a mixed-residue pair needs degree >= 2");
  std::uniform_real_distribution<double> spacing(0.5, 1.5), magnitude(0.2, 2.0), start(-1.0, 1.0);
  std::vector<double> lambda(n);
  lambda[0] = start(rng);
  for (int k = 1; k < n; ++k) lambda[k] = lambda[k - 1] + spacing(rng);
  double mean = 0.0;
  for (double l : lambda) mean += l / n;
  for (double& l : lambda) l -= mean;
  std::sort(lambda.begin(), lambda.end(), std::greater<>());

  std::vector<double> a(n);
  for (double& v : a) v = magnitude(rng);
  if (mixed) {
    std::bernoulli_distribution coin(0.5);
    for (double& v : a)
      if (coin(rng)) v = -v;
    const bool any_pos = std::any_of(a.begin(), a.end(), [](double v) { return v > 0; });
    const bool any_neg = std::any_of(a.begin(), a.end(), [](double v) { return v < 0; });
    if (!any_pos || !any_neg) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      double& v = a[pick(rng)];
      v = -v;
    }
  }

  const Polynomial q = Polynomial::from_roots(lambda);
  Polynomial s({0.0});
  for (int k = 0; k < n; ++k) {
    std::vector<double> others;
    for (int j = 0; j < n; ++j)
      if (j != k) others.push_back(lambda[j]);
    s = s + Polynomial::from_roots(others) * a[k];
  }
  GeneratedPair pair;
  pair.q = MonicPolynomial::from_polynomial(q);
  pair.r = MonicPolynomial::from_polynomial(q + s);
  pair.roots = lambda;
  pair.residues = a;
  return pair;
}

double binomial(int m, int n) {
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c = c * (m - n + i) / i;
  return c;
}

void subsets_into(int m, int start, std::vector<int>& exps, std::map<std::vector<int>, double>& terms,
                  double coef, int remaining) {
  if (remaining == 0) {
    terms[exps] += coef;
    return;
  }
  for (int j = start; j < m; ++j) {
    exps[j] = 1;
    subsets_into(m, j + 1, exps, terms, coef, remaining - 1);
    exps[j] = 0;
  }
}

json instance_metadata_common(const GeneratorSpec& spec, std::uint64_t seed) {
  return {{"kind", spec.kind}, {"n", spec.n}, {"seed", seed}, {"params", spec.params}};
}

}  // namespace

std::vector<Matrix> psd_tuple(int n, Rng& rng) {
  if (n < 1) throw InputError("tuple size must be >= 1");
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i) {
    const Matrix g = normal_matrix(n, n, rng);
    out.push_back(g * g.transpose() + 1e-6 * Matrix::Identity(n, n));
  }
  return out;
}

Matrix low_rank_psd(int n, int rank, Rng& rng) {
  if (rank < 0 || rank > n) throw InputError("rank must lie in [0, n]");
  if (rank == 0) return Matrix::Zero(n, n);
  const Matrix g = normal_matrix(n, rank, rng);
  return g * g.transpose();
}

DoublyStochasticTuple doubly_stochastic_tuple(int n, Rng& rng, bool normalize) {
  const auto oracle = HyperbolicOracle::symmetric_matrices(n);
  ScalingOptions options;
  options.threshold = 1e-12;
  options.max_iters = 10000;
  const ScalingReport report = hsi_run(oracle, as_points(psd_tuple(n, rng)), options);
  if (!report.converged) throw BudgetError("HSI did not reach defect 1e-12 within the generation budget");
  DoublyStochasticTuple out;
  out.hsi_iterations = report.iterations;
  out.matrices = as_matrices(report.final_state.tuple, n);
  if (normalize) {
    const Matrix d = point_to_matrix(report.final_state.d, n);
    const Matrix w = Eigen::SelfAdjointEigenSolver<Matrix>(d).operatorInverseSqrt();
    for (auto& a : out.matrices) {
      a = w * a * w;
      a = 0.5 * (a + a.transpose());
    }
  }
  out.defect = ds_defect(oracle, as_points(out.matrices));
  if (!(out.defect < 1e-10)) throw BudgetError("generated tuple failed the defect check");
  return out;
}

RankDeficientTuple rank_deficient_tuple(int n, Rng& rng) {
  if (n < 3) throw InputError("rank-deficient generator needs n >= 3");
  RankDeficientTuple out;
  const Matrix v = low_rank_psd(n, 1, rng);
  out.matrices = {v, v};
  const auto rest = psd_tuple(n, rng);
  for (int i = 2; i < n; ++i) out.matrices.push_back(rest[i]);
  out.witness = {0, 1};
  return out;
}

GeneratedPair hyperbolic_pair(int n, Rng& rng) { return residue_pair(n, rng, false); }
GeneratedPair nonhyperbolic_pair(int n, Rng& rng) { return residue_pair(n, rng, true); }

Matrix positive_matrix(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = u(rng);
  return a;
}

Matrix sparse_nonnegative_matrix(int n, double density, Rng& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::bernoulli_distribution keep(density);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v = u(rng);
      a(i, j) = keep(rng) ? v : 0.0;
    }
  return a;
}

HyperbolicOracle elementary_symmetric_oracle(int n, int m) {
  if (n < 1 || m < n) throw InputError("elementary symmetric oracle needs 1 <= n <= m");
  DensePolynomial p;
  p.n = n;
  p.m = m;
  std::vector<int> exps(m, 0);
  subsets_into(m, 0, exps, p.terms, 1.0 / binomial(m, n), n);
  return HyperbolicOracle::dense(std::move(p), Point::Ones(m));
}

HyperbolicOracle linear_forms_oracle(int n, int m, Rng& rng) {
  if (n < 1 || m < 1) throw InputError("linear forms oracle needs n, m >= 1");
  std::uniform_real_distribution<double> u(0.1, 2.0);
  // Expand prod_i (l_i . z) term by term, each form scaled so l_i . 1 = 1.
  std::map<std::vector<int>, double> terms{{std::vector<int>(m, 0), 1.0}};
  for (int i = 0; i < n; ++i) {
    std::vector<double> l(m);
    double total = 0.0;
    for (double& v : l) total += (v = u(rng));
    std::map<std::vector<int>, double> next;
    for (const auto& [exps, coef] : terms)
      for (int j = 0; j < m; ++j) {
        auto e = exps;
        ++e[j];
        next[e] += coef * l[j] / total;
      }
    terms = std::move(next);
  }
  DensePolynomial p;
  p.n = n;
  p.m = m;
  p.terms = std::move(terms);
  const Point e = Point::Ones(m);
  // Renormalize against accumulated rounding so p(e) = 1 to machine precision.
  const double pe = p.evaluate(e);
  for (auto& [exps, coef] : p.terms) coef /= pe;
  return HyperbolicOracle::dense(std::move(p), e);
}

json generate(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const int n = spec.n;
  json doc;
  doc["generator"] = instance_metadata_common(spec, seed);
  if (spec.kind == "psd_tuple") {
    const int rank = spec.params.value("rank", n);
    std::vector<Matrix> mats;
    if (rank >= n) {
      mats = psd_tuple(n, rng);
    } else {
      for (int i = 0; i < n; ++i) mats.push_back(low_rank_psd(n, rank, rng));
    }
    doc["instance"] = matrices_to_json(mats);
    doc["metadata"] = json::object();
  } else if (spec.kind == "doubly_stochastic_tuple") {
    const bool normalize = spec.params.value("normalize", true);
    const auto ds = doubly_stochastic_tuple(n, rng, normalize);
    doc["instance"] = matrices_to_json(ds.matrices);
    doc["metadata"] = {{"hsi_iterations", ds.hsi_iterations}, {"defect", ds.defect}};
  } else if (spec.kind == "rank_deficient_tuple") {
    const auto rd = rank_deficient_tuple(n, rng);
    std::vector<int> witness;
    for (int i : rd.witness) witness.push_back(i + 1);
    doc["instance"] = matrices_to_json(rd.matrices);
    doc["metadata"] = {{"witness", witness}};
  } else if (spec.kind == "hyperbolic_pair" || spec.kind == "nonhyperbolic_pair") {
    const bool mixed = spec.kind == "nonhyperbolic_pair";
    const auto pair = mixed ? nonhyperbolic_pair(n, rng) : hyperbolic_pair(n, rng);
    doc["instance"] = {{"q", monic_to_json(pair.q)}, {"r", monic_to_json(pair.r)}};
    doc["metadata"] = {{"roots", pair.roots}, {"residues", pair.residues}};
  } else {
    throw InputError("unknown generator kind \"" + spec.kind + "\"");
  }
  if (!revalidate(doc)) throw BudgetError("generated instance failed self-verification");
  return doc;
}

bool revalidate(const json& doc) {
  const std::string kind = doc.at("generator").at("kind").get<std::string>();
  const int n = doc.at("generator").at("n").get<int>();
  const json& inst = doc.at("instance");
  if (kind == "hyperbolic_pair" || kind == "nonhyperbolic_pair") {
    const auto q = monic_from_json(inst.at("q"));
    const auto r = monic_from_json(inst.at("r"));
    if (q.degree() != n || r.degree() != n) return false;
    const auto report = obreschkoff_pair_test(q, r.to_polynomial());
    return report.verdict ==
           (kind == "hyperbolic_pair" ? PairVerdict::hyperbolic : PairVerdict::not_hyperbolic);
  }
  const auto tuple = tuple_from_json(inst);
  if (!tuple.matrix_size || *tuple.matrix_size != n || static_cast<int>(tuple.tuple.size()) != n) return false;
  const auto oracle = HyperbolicOracle::symmetric_matrices(n);
  for (const auto& p : tuple.tuple.points)
    if (cone_membership(oracle, p) == ConeClass::outside) return false;
  if (kind == "doubly_stochastic_tuple") return ds_defect(oracle, tuple.tuple) < 1e-10;
  if (kind == "rank_deficient_tuple") {
    const auto er = edmonds_rado_check(oracle, tuple.tuple);
    return !er.holds && er.witness == std::vector<int>{0, 1};
  }
  return true;
}

}  // namespace hyperbolic::cli
