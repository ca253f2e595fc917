#include <cmath>
#include <random>

#include "doctest.h"
#include "simplex_mle/simplex_mle.hpp"
#include "support/oracles.hpp"

using namespace simplex_mle;

TEST_SUITE_BEGIN("likelihood");

TEST_CASE("kerridge inaccuracy on the worked points") {
  // minimum of the inaccuracy over {q_0 = 1/2} is log 2
  auto v = kerridge_inaccuracy(TypeVector({0.0, 1.0, 0.0}),
                               ProbabilityVector({0.25, 0.5, 0.25}));
  CHECK(v.finite);
  CHECK(v.get() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  auto uniform = kerridge_inaccuracy(TypeVector({0.5, 0.5}), ProbabilityVector({0.5, 0.5}));
  CHECK(uniform.get() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  auto off_support = kerridge_inaccuracy(TypeVector({1.0, 0.0}), ProbabilityVector({0.0, 1.0}));
  CHECK(off_support.is_infinite());
}

TEST_CASE("kerridge dimension mismatch is rejected") {
  CHECK_THROWS_AS(kerridge_inaccuracy(TypeVector({1.0}), ProbabilityVector({0.5, 0.5})),
                  ValidationError);
}

TEST_CASE("unconstrained minimum sits at q = nu") {
  std::mt19937 rng(71);
  TypeVector nu(oracles::random_simplex_point(rng, 5));
  double at_nu = kerridge_inaccuracy(nu, ProbabilityVector(nu.nu)).get();
  for (int k = 0; k < 200; ++k) {
    ProbabilityVector q(oracles::random_simplex_point(rng, 5));
    auto v = kerridge_inaccuracy(nu, q);
    CHECK(v.get() >= at_nu - 1e-12);
  }
}

TEST_CASE("only the active coordinates matter") {
  std::mt19937 rng(72);
  TypeVector nu({0.4, 0.0, 0.6, 0.0});
  for (int k = 0; k < 50; ++k) {
    auto q = oracles::random_simplex_point(rng, 4);
    double base = kerridge_inaccuracy(nu.nu, q).get();
    // shift mass between the passive letters
    double shift = std::min(q[1], 0.37);
    q[1] -= shift;
    q[3] += shift;
    CHECK(kerridge_inaccuracy(nu.nu, q).get() == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("i_divergence on the worked points") {
  CHECK(i_divergence(1.0, {0.5, 0.5}, {0.0, 0.0}) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(i_divergence(2.0, {1.0}, {0.0}) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(i_divergence(1.0, {0.5, 0.5}, {-1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(i_divergence(1.0, {0.0, 1.0}, {0.0, 0.0}), ValidationError);
}

TEST_CASE("i_divergence at mu = 1 is the negated inaccuracy") {
  std::mt19937 rng(73);
  for (int k = 0; k < 100; ++k) {
    auto nu = oracles::random_type(rng, 4, 1);
    auto q = oracles::random_simplex_point(rng, 4);
    auto split = active_passive_split(nu);
    std::vector<double> a, b;
    for (std::size_t i : split.active) {
      a.push_back(nu.nu[i]);
      b.push_back(nu.nu[i] / q[i] - 1.0);
    }
    double lhs = i_divergence(1.0, a, b);
    double ell = kerridge_inaccuracy(nu.nu, q).get();
    CHECK(lhs + ell == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("active passive split") {
  auto s1 = active_passive_split(TypeVector({0.6, 0.4, 0.0}));
  CHECK(s1.active == std::vector<std::size_t>{0, 1});
  CHECK(s1.passive == std::vector<std::size_t>{2});

  auto s2 = active_passive_split(TypeVector({0.5, 0.5}));
  CHECK(s2.active.size() == 2);
  CHECK(s2.passive.empty());

  auto s3 = active_passive_split(TypeVector({0.0, 1.0, 0.0}));
  CHECK(s3.active == std::vector<std::size_t>{1});
  CHECK(s3.passive == std::vector<std::size_t>{0, 2});

  CHECK_THROWS_AS(TypeVector({0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("likelihood ratio") {
  auto unit = likelihood_ratio(10, 0.7, 0.7);
  CHECK(unit.ratio == doctest::Approx(1.0));
  CHECK_FALSE(unit.overflow);

  auto big = likelihood_ratio(1000, 2.0, 0.5);
  CHECK(big.overflow);
  CHECK(std::isinf(big.ratio));
  CHECK(big.log_ratio == doctest::Approx(1500.0));

  CHECK_THROWS_AS(likelihood_ratio(10, std::numeric_limits<double>::infinity(), 0.0),
                  ValidationError);
}

TEST_CASE("type vector validation") {
  CHECK_THROWS_AS(TypeVector({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(TypeVector({-0.1, 1.1}), ValidationError);
  auto counts = TypeVector::from_counts({3, 2, 0});
  CHECK(counts.nu[0] == doctest::Approx(0.6));
  CHECK(counts.n.value() == 5);
}

TEST_SUITE_END();
