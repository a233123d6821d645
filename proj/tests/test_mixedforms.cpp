#include <doctest.h>

#include <random>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/polyoracle.hpp"
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

Matrix diag(std::initializer_list<double> v) {
  return pt(v).asDiagonal();
}

}  // namespace

TEST_CASE("mixed discriminant of identity tuples") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(mixed_discriminant({i2, i2}) == doctest::Approx(2.0).epsilon(1e-12));
  const Matrix i3 = Matrix::Identity(3, 3) / 3.0;
  CHECK(mixed_discriminant({i3, i3, i3}) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("mixed discriminant agrees with the column-permutation expansion") {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 5; ++n) {
    std::vector<Matrix> mats;
    for (int i = 0; i < n; ++i) mats.push_back(oracle::random_symmetric(n, rng));
    const double expect = oracle::mixed_discriminant_by_columns(mats);
    CHECK(mixed_discriminant(mats) == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("diagonal tuples give the permanent") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int n = 2; n <= 6; ++n) {
    Matrix v(n, n);
    std::vector<Matrix> mats;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) v(i, j) = u(rng);
      mats.push_back(v.row(i).transpose().asDiagonal());
    }
    CHECK(mixed_discriminant(mats) == doctest::Approx(oracle::permanent(v)).epsilon(1e-9));
  }
}

TEST_CASE("mixed value on repeated points is n! p(x)") {
  const auto p = HyperbolicOracle::product(3);
  const Point x = pt({0.5, 2.0, 1.5});
  const PointTuple t({x, x, x});
  CHECK(mixed_value(p, t) == doctest::Approx(6.0 * evaluate(p, x)));
  CHECK(mixed_value(HyperbolicOracle::product(2), PointTuple({pt({1, 0}), pt({0, 1})})) == doctest::Approx(1.0));
}

TEST_CASE("mixed value is symmetric and multilinear") {
  std::mt19937_64 rng(23);
  const int n = 3;
  const auto sym = HyperbolicOracle::symmetric_matrices(n);
  std::vector<Matrix> mats;
  for (int i = 0; i < n; ++i) mats.push_back(oracle::random_symmetric(n, rng));
  const double base = mixed_value(sym, as_points(mats));
  auto swapped = mats;
  std::swap(swapped[0], swapped[2]);
  CHECK(mixed_value(sym, as_points(swapped)) == doctest::Approx(base).epsilon(1e-10).scale(1.0));
  const Matrix extra = oracle::random_symmetric(n, rng);
  auto with_extra = mats;
  with_extra[1] = 2.0 * mats[1] - 0.5 * extra;
  auto only_extra = mats;
  only_extra[1] = extra;
  const double combined = 2.0 * base - 0.5 * mixed_value(sym, as_points(only_extra));
  CHECK(mixed_value(sym, as_points(with_extra)) == doctest::Approx(combined).epsilon(1e-9).scale(1.0));
}

TEST_CASE("repeated tuples and compositions") {
  const PointTuple x({pt({1}), pt({2}), pt({3})});
  const auto r = repeated_tuple(x, Composition{{0, 3, 0}});
  REQUIRE(r.size() == 3);
  for (const auto& p : r.points) CHECK(p[0] == 2.0);
  const auto c = compositions(2, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0].entries == std::vector<int>{2, 0});
  CHECK(c[2].entries == std::vector<int>{0, 2});
  CHECK(compositions(3, 4).size() == 15);
}

TEST_CASE("support examples") {
  const auto p = HyperbolicOracle::product(2);
  const auto basis = support(p, PointTuple({pt({1, 0}), pt({0, 1})}));
  REQUIRE(basis.members.size() == 1);
  CHECK(basis.members[0].r.entries == std::vector<int>{1, 1});
  CHECK(basis.members[0].value == doctest::Approx(1.0));

  const auto ones = support(p, PointTuple({pt({1, 1}), pt({1, 1})}));
  CHECK(ones.members.size() == 3);

  const auto sym = HyperbolicOracle::symmetric_matrices(2);
  const Matrix a = diag({1, 0});
  CHECK(support(sym, as_points({a, a})).empty());
  CHECK(newton_saturation_check(sym, as_points({a, a})).saturated);
}

TEST_CASE("polytope membership") {
  SupportSet s;
  s.members = {{Composition{{2, 0}}, 1.0}, {Composition{{0, 2}}, 1.0}};
  CHECK(polytope_membership(Composition{{1, 1}}, s));
  CHECK(polytope_membership(Composition{{2, 0}}, s));
  SupportSet t;
  t.members = {{Composition{{2, 0}}, 1.0}, {Composition{{1, 1}}, 1.0}};
  CHECK_FALSE(polytope_membership(Composition{{0, 2}}, t));
}

TEST_CASE("newton saturation on psd and product tuples") {
  std::mt19937_64 rng(24);
  for (int n = 2; n <= 4; ++n) {
    std::vector<Matrix> mats;
    for (int i = 0; i < n; ++i) mats.push_back(oracle::random_psd(n, rng));
    const auto r = newton_saturation_check(HyperbolicOracle::symmetric_matrices(n), as_points(mats));
    CHECK(r.saturated);
  }
  // Sparse nonnegative columns: the support is a transversal polytope.
  const auto p = HyperbolicOracle::product(3);
  const PointTuple sparse({pt({1, 0, 0}), pt({1, 1, 0}), pt({0, 0, 1})});
  const auto r = newton_saturation_check(p, sparse);
  CHECK(r.saturated);
  CHECK(r.support.members.size() == 2);
}

TEST_CASE("Alexandrov-Fenchel residual") {
  std::mt19937_64 rng(25);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const Matrix a = oracle::random_psd(3, rng), b = oracle::random_psd(3, rng);
  const auto same = af_check(sym, as_points({a, a, b}));
  CHECK(std::abs(same.residual) <= 1e-9 * same.scale);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> mats;
    for (int i = 0; i < 3; ++i) mats.push_back(oracle::random_psd(3, rng));
    const auto r = af_check(sym, as_points(mats));
    CHECK(r.inputs_nonnegative);
    CHECK(r.holds(1e-9));
  }
  // Permanent form: per(v1, v2, Y)^2 >= per(v1, v1, Y) per(v2, v2, Y).
  Matrix v(3, 3);
  v << 1, 2, 0.5, 0.3, 1, 2, 2, 0.1, 1;
  std::vector<Matrix> diags;
  for (int i = 0; i < 3; ++i) diags.push_back(v.row(i).transpose().asDiagonal());
  const auto r = af_check(sym, as_points(diags));
  Matrix v11 = v, v22 = v;
  v11.row(1) = v.row(0);
  v22.row(0) = v.row(1);
  const double expect = std::pow(oracle::permanent(v), 2) - oracle::permanent(v11) * oracle::permanent(v22);
  CHECK(r.residual == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("phi_k polynomials") {
  const auto p = HyperbolicOracle::product(3);
  const auto full = phi_k(p, Point::Zero(3), {}, 3);
  CHECK(full.coefficient(0) == doctest::Approx(0.0).scale(1.0));
  CHECK(full.coefficient(1) == doctest::Approx(0.0).scale(1.0));
  CHECK(full.coefficient(2) == doctest::Approx(0.0).scale(1.0));
  CHECK(full.coefficient(3) == doctest::Approx(6.0));

  const auto one = k_hyperbolic_check(p, pt({1, -2, 0.5}), {pt({1, 2, 1}), pt({2, 1, 1})}, 1);
  CHECK(one.real_rooted);
  CHECK(one.phi.degree() == 1);

  std::mt19937_64 rng(26);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = matrix_to_point(oracle::random_symmetric(3, rng));
    const auto r = k_hyperbolic_check(sym, x, {matrix_to_point(oracle::random_psd(3, rng))}, 2);
    REQUIRE(r.discriminant);
    CHECK(*r.discriminant >= -1e-9 * r.phi.max_abs_coefficient() * r.phi.max_abs_coefficient());
    CHECK(r.real_rooted);
  }
  CHECK_THROWS_AS(phi_k(p, pt({1, 1, 1}), {pt({1, -1, 1})}, 2), PreconditionError);
}

TEST_CASE("log-concavity profile") {
  const auto p = HyperbolicOracle::product(2);
  const auto m = log_concavity_profile(p, pt({1, 1}), pt({2, 2}));
  REQUIRE(m.size() == 3);
  CHECK(m[0] == doctest::Approx(8.0));
  CHECK(m[1] == doctest::Approx(4.0));
  CHECK(m[2] == doctest::Approx(2.0));

  const auto constant = log_concavity_profile(p, pt({1, 3}), pt({1, 3}));
  for (double v : constant) CHECK(v == doctest::Approx(6.0));

  std::mt19937_64 rng(27);
  const auto sym = HyperbolicOracle::symmetric_matrices(3);
  const Matrix a = oracle::random_psd(3, rng), b = oracle::random_psd(3, rng);
  const auto prof = log_concavity_profile(sym, matrix_to_point(a), matrix_to_point(b));
  for (std::size_t i = 1; i + 1 < prof.size(); ++i) CHECK(prof[i] * prof[i] >= prof[i - 1] * prof[i + 1] * (1 - 1e-9));

  for (double t = 0.1; t < 0.95; t += 0.1) {
    const double lhs = std::log(evaluate(sym, matrix_to_point(t * a + (1 - t) * b)));
    const double rhs = t * std::log(evaluate(sym, matrix_to_point(a))) + (1 - t) * std::log(evaluate(sym, matrix_to_point(b)));
    CHECK(lhs >= rhs - 1e-12);
  }
  CHECK_THROWS_AS(log_concavity_profile(p, pt({1, -1}), pt({1, 1})), PreconditionError);
}
