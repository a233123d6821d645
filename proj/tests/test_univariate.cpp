#include <doctest.h>

#include <random>

#include "hyperbolic/errors.hpp"
#include "hyperbolic/univariate.hpp"
#include "oracles.hpp"

using namespace hyperbolic;

TEST_CASE("companion matrix layout") {
  const Matrix c = companion(MonicPolynomial{{3.0, -2.0}});
  CHECK(c(0, 0) == 0.0);
  CHECK(c(0, 1) == 1.0);
  CHECK(c(1, 0) == -2.0);
  CHECK(c(1, 1) == 3.0);

  const Matrix single = companion(MonicPolynomial{{2.5}});
  REQUIRE(single.rows() == 1);
  CHECK(single(0, 0) == 2.5);
}

TEST_CASE("real roots of small monic polynomials") {
  const auto r = real_roots(MonicPolynomial{{0.0, 1.0}});
  REQUIRE(r.ok());
  CHECK(r.value().roots[0] == doctest::Approx(1.0));
  CHECK(r.value().roots[1] == doctest::Approx(-1.0));

  const auto c = real_roots(MonicPolynomial{{0.0, -1.0}});
  CHECK_FALSE(c.ok());
  CHECK(std::abs(c.offending.imag()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(c.value(), NonRealRootError);

  const auto two = real_roots(MonicPolynomial{{3.0, -2.0}});
  REQUIRE(two.ok());
  CHECK(two.value().roots[0] == doctest::Approx(2.0));
  CHECK(two.value().roots[1] == doctest::Approx(1.0));
}

TEST_CASE("triple root is accepted as a cluster") {
  // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
  const auto r = real_roots(MonicPolynomial{{3.0, -3.0, 1.0}});
  REQUIRE(r.ok());
  for (double root : r.value().roots) CHECK(std::abs(root - 1.0) <= 1e-5);
}

TEST_CASE("roots recovered from random real-rooted polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    std::vector<double> roots(n);
    for (auto& x : roots) x = u(rng);
    std::sort(roots.rbegin(), roots.rend());
    bool separated = true;
    for (int i = 1; i < n; ++i) separated = separated && roots[i - 1] - roots[i] > 0.05;
    if (!separated) continue;
    const auto q = MonicPolynomial::from_roots(roots);
    const auto r = real_roots(q);
    REQUIRE(r.ok());
    for (int i = 0; i < n; ++i) CHECK(r.value().roots[i] == doctest::Approx(roots[i]).epsilon(1e-7));
  }
}

TEST_CASE("monic convention roundtrip") {
  const std::vector<double> roots{2.0, -1.0, 0.5};
  const auto q = MonicPolynomial::from_roots(roots);
  const Polynomial p = q.to_polynomial();
  for (double x : roots) CHECK(std::abs(p(x)) < 1e-12);
  CHECK(p.leading() == 1.0);
  const auto back = MonicPolynomial::from_polynomial(3.0 * p);
  for (std::size_t i = 0; i < q.a.size(); ++i) CHECK(back.a[i] == doctest::Approx(q.a[i]));
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial a({1.0, 2.0});       // 1 + 2t
  const Polynomial b({0.0, 0.0, 1.0});  // t^2
  const Polynomial prod = a * b;
  CHECK(prod.coefficients() == std::vector<double>{0.0, 0.0, 1.0, 2.0});
  CHECK((a + b).coefficients() == std::vector<double>{1.0, 2.0, 1.0});
  CHECK(prod.derivative().coefficients() == std::vector<double>{0.0, 2.0, 6.0});
  const Polynomial s = b.shifted(1.0);  // (t + 1)^2
  CHECK(s.coefficients() == std::vector<double>{1.0, 2.0, 1.0});
  CHECK(Polynomial({1.0, 2.0, 1e-20}).trimmed(1e-14).degree() == 1);
}

TEST_CASE("interpolation reproduces a cubic") {
  const Polynomial p({0.5, -1.0, 2.0, 3.0});
  const auto nodes = chebyshev_nodes(4, 2.0);
  std::vector<double> values;
  for (double t : nodes) values.push_back(p(t));
  const auto c = interpolate_monomial(nodes, values, 2.0);
  for (int k = 0; k < 4; ++k) CHECK(c[k] == doctest::Approx(p.coefficient(k)).epsilon(1e-12));
}
