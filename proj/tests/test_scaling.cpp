#include <doctest.h>

#include <random>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/scaling.hpp"
#include "oracles.hpp"

using namespace hyperbolic;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

PointTuple as_points(const std::vector<Matrix>& mats) {
  PointTuple t;
  for (const auto& m : mats) t.points.push_back(matrix_to_point(m));
  return t;
}

std::vector<Matrix> random_psd_tuple(int n, std::mt19937_64& rng) {
  std::vector<Matrix> mats;
  for (int i = 0; i < n; ++i) mats.push_back(oracle::random_psd(n, rng));
  return mats;
}

Matrix diag10() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  return a;
}

}  // namespace

TEST_CASE("defect examples") {
  const int n = 3;
  const Matrix third = Matrix::Identity(n, n) / n;
  const auto sym = HyperbolicOracle::symmetric_matrices(n);
  CHECK(ds_defect(sym, as_points({third, third, third})) == doctest::Approx(0.0).scale(1.0));
  const auto prod = HyperbolicOracle::product(2);
  CHECK(ds_defect(prod, PointTuple({pt({0.5, 0.5}), pt({0.5, 0.5})})) == doctest::Approx(0.0).scale(1.0));
  const auto sym2 = HyperbolicOracle::symmetric_matrices(2);
  CHECK_THROWS_AS(ds_defect(sym2, as_points({diag10(), diag10()})), PreconditionError);
}

TEST_CASE("hs map normalizes traces and fixes doubly stochastic tuples") {
  std::mt19937_64 rng(31);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const auto x = as_points(random_psd_tuple(3, rng));
  const auto y = hs_map(sym, x);
  const Point d = x.sum();
  for (std::size_t i = 0; i < 3; ++i) CHECK(trace_in_direction(sym, y[i], d) == doctest::Approx(1.0).epsilon(1e-9));

  const Matrix third = Matrix::Identity(3, 3) / 3.0;
  const auto fixed = as_points({third, third, third});
  const auto z = hs_map(sym, fixed);
  for (std::size_t i = 0; i < 3; ++i) CHECK((z[i] - fixed[i]).norm() < 1e-12);
}

TEST_CASE("hs map on product oracles is row then column scaling") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int n = 2; n <= 5; ++n) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    const auto prod = HyperbolicOracle::product(n);
    const Matrix hs = tuple_as_columns(hs_map(prod, columns_as_tuple(a)));
    // tr_d(x_j) = sum_i a_ij / S_i with S the row sums; hs divides each column by it.
    const Vector s = a.rowwise().sum();
    Matrix expect = a;
    for (int j = 0; j < n; ++j) expect.col(j) /= (a.col(j).array() / s.array()).sum();
    CHECK((hs - expect).cwiseAbs().maxCoeff() < 1e-12);
    // With rows rescaled by S the map is exactly classical row-then-column scaling.
    const Matrix scaled = s.cwiseInverse().asDiagonal() * a;
    const Matrix via_hs = tuple_as_columns(hs_map(prod, columns_as_tuple(scaled)));
    CHECK((via_hs - oracle::row_then_column(a)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((classical_sinkhorn(a, 1) - oracle::row_then_column(a)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("classical Sinkhorn examples") {
  const Matrix ones = Matrix::Ones(3, 3);
  CHECK((classical_sinkhorn(ones, 1) - ones / 3.0).norm() < 1e-15);
  CHECK((classical_sinkhorn(ones, 5) - ones / 3.0).norm() < 1e-15);
  Matrix ds(2, 2);
  ds << 0.3, 0.7, 0.7, 0.3;
  CHECK((classical_sinkhorn(ds, 3) - ds).norm() < 1e-15);
}

TEST_CASE("Edmonds-Rado examples") {
  const auto sym = HyperbolicOracle::symmetric_matrices(2);
  const auto bad = edmonds_rado_check(sym, as_points({diag10(), diag10()}));
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == std::vector<int>{0, 1});

  std::mt19937_64 rng(33);
  CHECK(edmonds_rado_check(HyperbolicOracle::symmetric_matrices(3), as_points(random_psd_tuple(3, rng))).holds);
  const auto prod = HyperbolicOracle::product(3);
  CHECK(edmonds_rado_check(prod, PointTuple({pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})})).holds);
  // Lexicographic order visits {0}, {0, 1}, {0, 1, 2} before {1, 2}.
  const auto lex = edmonds_rado_check(prod, PointTuple({pt({1, 0, 0}), pt({0, 0, 1}), pt({0, 0, 1})}));
  REQUIRE(lex.witness);
  CHECK(*lex.witness == std::vector<int>{0, 1, 2});
  const auto first = edmonds_rado_check(prod, PointTuple({pt({0, 0, 1}), pt({0, 0, 1}), pt({1, 0, 0})}));
  REQUIRE(first.witness);
  CHECK(*first.witness == std::vector<int>{0, 1});
}

TEST_CASE("HSI on positive and rank-deficient tuples") {
  std::mt19937_64 rng(34);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const auto r = hsi_run(sym, as_points(random_psd_tuple(3, rng)));
  CHECK(r.converged);
  CHECK(r.verdict == CapacityVerdict::positive);
  CHECK(r.defect_history.back() < 1e-10);
  for (std::size_t j = 1; j < r.energy_history.size(); ++j)
    CHECK(r.energy_history[j] <= r.energy_history[j - 1] * (1 + 1e-10));

  const Matrix third = Matrix::Identity(3, 3) / 3.0;
  const auto ds = hsi_run(sym, as_points({third, third, third}));
  CHECK(ds.converged);
  CHECK(ds.iterations == 0);

  const auto sym2 = HyperbolicOracle::symmetric_matrices(2);
  const auto zero = hsi_run(sym2, as_points({diag10(), diag10()}));
  CHECK(zero.verdict == CapacityVerdict::zero);
  CHECK_FALSE(zero.converged);
}

TEST_CASE("HSI on matrix tuples follows the naive recursion") {
  // Naive route: X_i <- X_i / tr(D^{-1} X_i), energies det D, in the input coordinates.
  const auto naive = [](std::vector<Matrix> mats, int steps) {
    std::vector<double> defects, energies;
    for (int j = 0; j <= steps; ++j) {
      Matrix d = Matrix::Zero(mats[0].rows(), mats[0].cols());
      for (const auto& m : mats) d += m;
      const Matrix inv = d.inverse();
      double defect = 0.0;
      std::vector<double> t;
      for (const auto& m : mats) {
        t.push_back((inv * m).trace());
        defect += (t.back() - 1) * (t.back() - 1);
      }
      defects.push_back(defect);
      energies.push_back(d.determinant());
      for (std::size_t i = 0; i < mats.size(); ++i) mats[i] /= t[i];
    }
    return std::pair{defects, energies};
  };
  std::mt19937_64 rng(35);
  ScalingOptions options;
  options.max_iters = 8;
  options.threshold = 0.0;
  auto psd = random_psd_tuple(4, rng);
  // An indefinite point keeps the sum positive but takes the coordinate route.
  auto indefinite = psd;
  indefinite[0] = psd[0] - 1e-3 * Matrix::Identity(4, 4);
  for (const auto& mats : {psd, indefinite}) {
    const auto r = hsi_run(HyperbolicOracle::symmetric_matrices(4), as_points(mats), options);
    const auto [defects, energies] = naive(mats, 8);
    REQUIRE(r.defect_history.size() == 9);
    for (int j = 0; j <= 8; ++j) {
      CHECK(r.defect_history[j] == doctest::Approx(defects[j]).epsilon(1e-9).scale(1e-12));
      CHECK(r.energy_history[j] == doctest::Approx(energies[j]).epsilon(1e-9));
    }
    CHECK(r.final_state.defect == doctest::Approx(ds_defect(HyperbolicOracle::symmetric_matrices(4),
                                                            r.final_state.tuple)).epsilon(1e-8));
  }
}

TEST_CASE("long HSI runs on rank-deficient tuples keep the defect away from zero") {
  std::mt19937_64 rng(36);
  const Matrix v = [&] {
    const Vector g = oracle::random_symmetric(3, rng).col(0);
    return Matrix(g * g.transpose());
  }();
  std::vector<Matrix> mats{v, v, oracle::random_psd(3, rng)};
  ScalingOptions options;
  options.max_iters = 1000;
  options.continue_after_zero = true;
  const auto r = hsi_run(HyperbolicOracle::symmetric_matrices(3), as_points(mats), options);
  CHECK(r.verdict == CapacityVerdict::zero);
  CHECK(r.iterations == 1000);
  for (double defect : r.defect_history) CHECK(defect > 1.0 / 3);
  for (std::size_t j = 1; j < r.energy_history.size(); ++j)
    CHECK(r.energy_history[j] <= r.energy_history[j - 1] * (1 + 1e-10));
  // Two equal rank-one points end with trace 1/2 each, so the defect tends to 3/2.
  CHECK(r.defect_history.back() == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("capacity of doubly stochastic and scaled tuples") {
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const Matrix third = Matrix::Identity(3, 3) / 3.0;
  const auto ds = capacity(sym, as_points({third, third, third}));
  CHECK(ds.status == CapacityStatus::converged);
  CHECK(ds.value == doctest::Approx(1.0).epsilon(1e-9));
  for (double a : ds.minimizer) CHECK(a == doctest::Approx(1.0).epsilon(1e-6));

  std::mt19937_64 rng(35);
  const auto x = as_points(random_psd_tuple(3, rng));
  const auto base = capacity(sym, x);
  PointTuple scaled = x;
  const double s[3] = {0.5, 2.0, 3.0};
  for (int i = 0; i < 3; ++i) scaled[i] *= s[i];
  CHECK(capacity(sym, scaled).value == doctest::Approx(3.0 * base.value).epsilon(1e-5));

  const auto sym2 = HyperbolicOracle::symmetric_matrices(2);
  const auto zero = capacity(sym2, as_points({diag10(), diag10()}));
  CHECK(zero.status == CapacityStatus::zero_capacity);
  CHECK(zero.value == 0.0);
}

TEST_CASE("capacity matches a one-dimensional search for n = 2") {
  std::mt19937_64 rng(36);
  const auto sym = HyperbolicOracle::symmetric_matrices(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = oracle::random_psd(2, rng), b = oracle::random_psd(2, rng);
    const double expect = std::exp(oracle::golden_section_min(
        [&](double s) { return std::log((std::exp(s) * a + std::exp(-s) * b).determinant()); }, -20, 20));
    CHECK(capacity(sym, as_points({a, b})).value == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("capacity objective gradient is the trace vector") {
  std::mt19937_64 rng(37);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const auto x = as_points(random_psd_tuple(3, rng));
  Vector a(3);
  a << 0.2, -0.5, 0.3;
  const auto obj = capacity_objective(sym, x, a);
  for (int i = 0; i < 3; ++i) {
    const double fd = oracle::central_difference(
        [&](double h) {
          Vector b = a;
          b[i] += h;
          return capacity_objective(sym, x, b).g;
        },
        0.0, 1e-5);
    CHECK(obj.gradient[i] == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("van der Waerden ratio and capacity sandwich") {
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const Matrix third = Matrix::Identity(3, 3) / 3.0;
  CHECK(vdw_ratio(sym, as_points({third, third, third})) == doctest::Approx(2.0 / 9.0).epsilon(1e-8));

  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  Matrix a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
  const auto prod = HyperbolicOracle::product(3);
  const auto x = columns_as_tuple(a);
  const double cap = capacity(prod, x).value;
  CHECK(mixed_value(prod, x) == doctest::Approx(oracle::permanent(a)).epsilon(1e-10));
  CHECK(oracle::permanent(a) / cap >= 2.0 / 9.0 - 1e-9);
  CHECK(oracle::permanent(a) <= cap * (1 + 1e-8));
}

TEST_CASE("capacity concavity and its mixed refinement") {
  std::mt19937_64 rng(39);
  const auto sym = HyperbolicOracle::symmetric_matrices(2);
  const auto x = as_points(random_psd_tuple(2, rng));
  const std::vector<Composition> comps{Composition{{2, 0}}, Composition{{0, 2}}};
  const std::vector<double> w{0.5, 0.5};
  const auto r = capacity_concavity_check(sym, x, comps, w);
  CHECK(r.holds);
  const auto m = mixed_value_concavity_check(sym, x, comps, w);
  CHECK(m.holds);
  const std::vector<Composition> same{Composition{{1, 1}}, Composition{{1, 1}}};
  const auto eq = capacity_concavity_check(sym, x, same, w);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-8));
  CHECK_THROWS_AS(convex_combination({Composition{{2, 0}}, Composition{{0, 2}}}, {0.3, 0.7}), InputError);
}

TEST_CASE("inequality between Q and its gradient") {
  const auto prod = HyperbolicOracle::product(2);
  const auto eq = inequality23_check(prod, pt({2, 3}));
  CHECK(eq.lhs == doctest::Approx(1.0 / 6.0));
  CHECK(eq.rhs == doctest::Approx(1.0 / 6.0));
  CHECK(eq.holds);

  DensePolynomial sq{2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}}};
  const auto q = HyperbolicOracle::dense(sq, pt({1, 0}));
  const auto boundary = inequality23_check(q, pt({1, 1}));
  CHECK(boundary.lhs == doctest::Approx(0.5));
  CHECK(boundary.rhs == doctest::Approx(0.5));
  const auto reversed = inequality23_check(q, pt({1, 2}));
  CHECK(reversed.lhs == doctest::Approx(0.3125));
  CHECK(reversed.rhs == doctest::Approx(0.2));
  CHECK_FALSE(reversed.holds);
}
