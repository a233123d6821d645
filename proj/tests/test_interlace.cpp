#include <doctest.h>

#include <random>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/interlace.hpp"
#include "oracles.hpp"

using namespace hyperbolic;

namespace {

const MonicPolynomial kQ{{0.0, 1.0}};  // x^2 - 1

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double a = lo; a <= hi + 1e-12; a += step) g.push_back(a);
  return g;
}

}  // namespace

TEST_CASE("residue test examples") {
  const auto h = obreschkoff_pair_test(kQ, Polynomial({0.0, 1.0}));
  CHECK(h.verdict == PairVerdict::hyperbolic);
  REQUIRE(h.residues.size() == 2);
  CHECK(h.residues[0] == doctest::Approx(0.5));
  CHECK(h.residues[1] == doctest::Approx(0.5));

  const auto n = obreschkoff_pair_test(kQ, Polynomial({1.0, 0.0, 1.0}));
  CHECK(n.verdict == PairVerdict::not_hyperbolic);
  CHECK(n.residues[0] == doctest::Approx(1.0));
  CHECK(n.residues[1] == doctest::Approx(-1.0));
  CHECK(n.constant_term == doctest::Approx(1.0));
}

TEST_CASE("q with its derivative added is a hyperbolic pair") {
  const std::vector<double> roots{2.0, 0.5, -1.0, -3.0};
  const auto q = MonicPolynomial::from_roots(roots);
  const Polynomial r = q.to_polynomial() + q.to_polynomial().derivative();
  CHECK(obreschkoff_pair_test(q, r).verdict == PairVerdict::hyperbolic);
  CHECK(sampled_pencil_test(q, r).verdict == PairVerdict::hyperbolic);
}

TEST_CASE("sampled pencil test examples") {
  CHECK(sampled_pencil_test(kQ, Polynomial({0.0, 1.0})).verdict == PairVerdict::hyperbolic);
  const auto n = sampled_pencil_test(kQ, Polynomial({1.0, 0.0, 1.0}));
  CHECK(n.verdict == PairVerdict::not_hyperbolic);
  REQUIRE(n.counterexample_direction);
  CHECK(n.counterexample_direction->first == doctest::Approx(0.0));
  CHECK(n.counterexample_direction->second == doctest::Approx(1.0));
}

TEST_CASE("residue test requires real-rooted q") {
  CHECK_THROWS_AS(obreschkoff_pair_test(MonicPolynomial{{0.0, -1.0}}, Polynomial({0.0, 1.0})), NonRealRootError);
}

TEST_CASE("pencil characteristic polynomial examples") {
  const MonicPolynomial r{{-1.0, 1.0}};  // x^2 + x - 1, the monic partner of (x^2 - 1, x)
  const auto c10 = pencil_char_poly(kQ, r, 1.0, 0.0);
  CHECK(c10[0] == doctest::Approx(-1.0));
  CHECK(c10[1] == doctest::Approx(0.0).scale(1.0));
  const auto c01 = pencil_char_poly(kQ, r, 0.0, 1.0);
  CHECK(c01[1] == doctest::Approx(1.0));
  CHECK(c01[0] == doctest::Approx(-1.0));
  // Independent path: eigenvalues of x C_q + y C_r versus (x + y) * roots of (x q + y r) / (x + y).
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = u(rng), y = u(rng);
    if (std::abs(x + y) < 0.1) continue;
    const Matrix m = pencil_matrix(kQ, r, x, y);
    Eigen::EigenSolver<Matrix> es(m);
    const Polynomial comb = x * kQ.to_polynomial() + y * r.to_polynomial();
    const auto rr = real_roots(comb);
    if (!rr.ok()) continue;
    std::vector<double> ev;
    for (int i = 0; i < 2; ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.rbegin(), ev.rend());
    std::vector<double> scaled;
    for (double t : rr.value().roots) scaled.push_back((x + y) * t);
    std::sort(scaled.rbegin(), scaled.rend());
    for (int i = 0; i < 2; ++i) CHECK(ev[i] == doctest::Approx(scaled[i]).epsilon(1e-9));
  }
}

TEST_CASE("monic partner") {
  const auto p = monic_partner(kQ, Polynomial({0.0, 1.0}));
  CHECK(p.a == std::vector<double>{-1.0, 1.0});
  const auto same = monic_partner(kQ, Polynomial({2.0, 0.0, 2.0}));
  CHECK(same.a[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(same.a[1] == doctest::Approx(-1.0));
}

TEST_CASE("majorization examples") {
  CHECK(majorization_check({1, 1}, {2, 0}, 1e-12).majorized);
  CHECK_FALSE(majorization_check({2, 1}, {1, 1}, 1e-12).majorized);
  CHECK_FALSE(majorization_check({2, 0}, {1, 1}, 1e-12).majorized);
}

TEST_CASE("Lidskii experiment") {
  std::mt19937_64 rng(42);
  const Matrix a = oracle::random_symmetric(4, rng);
  CHECK(lidskii_experiment(a, 2.5 * Matrix::Identity(4, 4), 1e-9).majorized);
  Matrix da = Matrix::Zero(3, 3), db = Matrix::Zero(3, 3);
  da.diagonal() << 3, -1, 2;
  db.diagonal() << 0.5, 4, -2;
  CHECK(lidskii_experiment(da, db, 1e-9).majorized);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    CHECK(lidskii_experiment(oracle::random_symmetric(n, rng), oracle::random_symmetric(n, rng), 1e-9).majorized);
  }
}

TEST_CASE("pencil majorization on the small pair") {
  const MonicPolynomial r = monic_partner(kQ, Polynomial({0.0, 1.0}));
  const auto rep = corollary_majorization_experiment(kQ, r, Triple{1, 0, 0}, Triple{0, 1, 0});
  CHECK(rep.majorization.majorized);
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const auto near = corollary_majorization_experiment(kQ, r, Triple{1, 0.3, 0.2}, Triple{0, eps, 0});
    for (double g : near.majorization.prefix_gaps) CHECK(g >= -1e-6);
  }
}

TEST_CASE("derivative line convexity") {
  const auto sym = grid(-2.0, 2.0, 0.25);
  const auto r = derivative_line_convexity(kQ, 0.0, 1.0, 1, sym, 1e-9);
  CHECK(r.convex);
  REQUIRE(r.min_at_zero);
  CHECK(*r.min_at_zero);
  REQUIRE(r.majorization_chain);
  CHECK(*r.majorization_chain);
  // With y = x + a: y^2 - 1 - 2ay = 0, so x = +-sqrt(1 + a^2).
  for (std::size_t i = 0; i < sym.size(); ++i)
    CHECK(r.values[i] == doctest::Approx(std::sqrt(1 + sym[i] * sym[i])).epsilon(1e-9));

  const auto cubic = MonicPolynomial::from_roots(std::vector<double>{1.5, 0.2, -1.0});
  const auto full = derivative_line_convexity(cubic, 0.3, 1.0, 3, sym, 1e-9);
  REQUIRE(full.sum_constant);
  CHECK(*full.sum_constant);
  for (double v : full.values) CHECK(v == doctest::Approx(full.values.front()).epsilon(1e-9));
}

TEST_CASE("symmetric convex functionals along a pencil line") {
  const MonicPolynomial r = monic_partner(kQ, Polynomial({0.0, 1.0}));
  const auto g = grid(-2.0, 2.0, 0.1);
  SymmetricConvexFunction f;
  f.kind = SymmetricConvexKind::max;
  const auto m = symmetric_convex_line_check(kQ, r, 0.0, 0.0, f, g, 1e-9);
  CHECK(m.convex);
  CHECK(m.real_rooted);
  // P_a = x^2 + (1 - a) x - 1.
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double b = 1 - g[i];
    CHECK(m.values[i] == doctest::Approx((-b + std::sqrt(b * b + 4)) / 2).epsilon(1e-9));
  }

  f.kind = SymmetricConvexKind::topk_sum;
  f.k = 2;
  CHECK(symmetric_convex_line_check(kQ, r, 0.5, 0.7, f, g, 1e-9).convex);
}
