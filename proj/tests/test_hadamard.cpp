#include <cmath>

#include "avgdist/cone.hpp"
#include "avgdist/hadamard.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avgdist;

TEST_CASE("cat0 comparison is an equality in Euclidean space") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> p(3, std::vector<double>(3));
    for (auto& v : p)
      for (double& c : v) c = rng.real() * 4.0 - 2.0;
    CHECK(cat0_comparison_check(p[0], p[1], p[2], {0.0, 0.2, 0.5, 0.8, 1.0}));
  }
  // degenerate y = z: both sides equal d(x,y)^2
  std::vector<double> x = {1.0, 0.0}, y = {0.0, 1.0};
  CHECK(cat0_margin(std::sqrt(2.0), std::sqrt(2.0), 0.0, std::sqrt(2.0), 0.37) ==
        doctest::Approx(0.0));
  (void)x;
  (void)y;
}

TEST_CASE("tripod realizes a strict comparison inequality") {
  // three unit segments glued at a basepoint; geodesic y->z passes the center
  FiniteMetric leg(2);
  leg.set(0, 1, 1.0);
  PointedSpace s{leg, 0};
  auto tripod = lp_union({s, s, s}, 1.0);
  int x = tripod.index_of(2, 1);  // third leaf
  int y = tripod.index_of(0, 1);
  int z = tripod.index_of(1, 1);
  int center = tripod.glued_index;
  double margin = cat0_margin(tripod.metric(x, y), tripod.metric(x, z), tripod.metric(y, z),
                              tripod.metric(x, center), 0.5);
  CHECK(margin > 1.0);  // 3 - 1 hand-computed
  CHECK(margin == doctest::Approx(2.0));
}

TEST_CASE("two_barycentric margin vanishes in Euclidean space") {
  // two equal atoms at +-1, z = 1: LHS 2 = RHS 1+1
  std::vector<std::vector<double>> pts = {{-1.0}, {1.0}};
  std::vector<double> w = {0.5, 0.5};
  CHECK(two_barycentric_check(pts, w, {1.0}) == doctest::Approx(0.0));

  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 2 + rng.index(5);
    std::vector<std::vector<double>> p(k, std::vector<double>(3));
    for (auto& v : p)
      for (double& c : v) c = rng.real() * 2.0 - 1.0;
    std::vector<double> weights(k);
    double sum = 0.0;
    for (double& x : weights) sum += (x = 0.1 + rng.real());
    for (double& x : weights) x /= sum;
    std::vector<double> z = {rng.real(), rng.real(), rng.real()};
    CHECK(std::abs(two_barycentric_check(p, weights, z)) <= kMarginTol);
  }
}

TEST_CASE("p_barycentric margins") {
  // p = 2 reduces to the two-point check
  std::vector<std::vector<double>> pts = {{-1.0}, {1.0}};
  std::vector<double> w = {0.5, 0.5};
  CHECK(p_barycentric_check(pts, w, {1.0}, 2.0) == doctest::Approx(0.0));

  // z at the barycenter: margin (1 - 1/(2^{p-1}-1)) * moment >= 0 for p >= 2
  for (double p : {2.0, 3.0, 4.0}) {
    double margin = p_barycentric_check(pts, w, {0.0}, p);
    double expect = (1.0 - 1.0 / (std::pow(2.0, p - 1.0) - 1.0));
    CHECK(margin == doctest::Approx(expect));
    CHECK(margin >= -kMarginTol);
  }

  Rng rng(8);
  for (double p : {2.0, 2.5, 3.0, 4.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::vector<double>> cloud(10, std::vector<double>(3));
      for (auto& v : cloud)
        for (double& c : v) c = rng.real() * 2.0 - 1.0;
      std::vector<double> weights(10, 0.1);
      std::vector<double> z = {2.0 * rng.real() - 1.0, 2.0 * rng.real() - 1.0,
                               2.0 * rng.real() - 1.0};
      CHECK(p_barycentric_check(cloud, weights, z, p) >= -kMarginTol);
    }
  }
}

TEST_CASE("p_barycentric_counterexample") {
  auto ce1 = p_barycentric_counterexample(1.0, 1.0);
  CHECK(ce1.eta == doctest::Approx(1.0));
  CHECK(ce1.lhs == doctest::Approx(1.0));
  CHECK(ce1.rhs == doctest::Approx(2.0));
  CHECK(ce1.lhs < ce1.rhs);

  auto ce15 = p_barycentric_counterexample(1.5, 0.5);
  CHECK(ce15.lhs < ce15.rhs);
  CHECK(ce15.eta < 1.0);

  CHECK_THROWS_AS(p_barycentric_counterexample(2.0, 0.5), validation_error);
}

TEST_CASE("margins are continuous in p: no sign flip across sampled p >= 2") {
  Rng rng(12);
  std::vector<std::vector<double>> cloud(6, std::vector<double>(2));
  for (auto& v : cloud)
    for (double& c : v) c = rng.real();
  std::vector<double> w(6, 1.0 / 6.0);
  std::vector<double> z = {0.9, -0.4};
  for (double p = 2.0; p <= 4.01; p += 0.25)
    CHECK(p_barycentric_check(cloud, w, z, p) >= -kMarginTol);
}
