#include <cmath>
#include <sstream>

#include "avgdist/transform.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avgdist;

TEST_CASE("check_transform") {
  auto grid = log_grid(1e-2, 1e2, 64);
  CHECK(check_transform(MetricTransform::snowflake(0.5), grid).ok);
  CHECK(check_transform(MetricTransform::truncation(3.0), grid).ok);
  CHECK(check_transform(MetricTransform::log1p(), grid).ok);

  // t^2 is convex
  auto convex = MetricTransform::snowflake(2.0);
  auto res = check_transform(convex, grid);
  CHECK(!res.ok);
  CHECK(res.violation == "not concave");
}

TEST_CASE("decompose exact short-circuits") {
  auto td = decompose(MetricTransform::truncation(5.0), 0.1, 100.0);
  CHECK(td.alpha0 == 0.0);
  REQUIRE(td.terms.size() == 1);
  CHECK(td.terms[0].first == doctest::Approx(1.0));
  CHECK(td.terms[0].second == doctest::Approx(5.0));
  for (double t : log_grid(0.1, 100.0, 50)) CHECK(td.eval(t) == doctest::Approx(std::min(t, 5.0)));

  auto id = decompose(MetricTransform::identity(), 0.5, 8.0);
  CHECK(id.alpha0 == doctest::Approx(1.0));
  CHECK(id.terms.empty());
}

TEST_CASE("decompose envelope on the acceptance transforms") {
  // independent summation oracle for phi_hat
  auto eval_oracle = [](const TruncationDecomposition& td, double t) {
    double acc = td.alpha0 * t;
    for (auto [a, b] : td.terms) acc += std::min(a * t, b);
    return acc;
  };
  std::vector<MetricTransform> phis = {
      MetricTransform::snowflake(0.5), MetricTransform::snowflake(0.3),
      MetricTransform::log1p(), MetricTransform::truncation(5.0)};
  for (const auto& phi : phis) {
    double lo = std::pow(2.0, -10), hi = std::pow(2.0, 10);
    auto td = decompose(phi, lo, hi, 64);
    for (double t : log_grid(lo, hi, 1024)) {
      double f = phi(t);
      double fh = eval_oracle(td, t);
      CHECK(fh >= f / 2.0 - 1e-12);
      CHECK(fh <= 3.0 * f + 1e-12);
    }
  }
}

TEST_CASE("decompose output is itself a metric transform") {
  auto td = decompose(MetricTransform::snowflake(0.5), 0.01, 100.0, 64);
  MetricTransform as_phi = MetricTransform::piecewise_linear({});
  // evaluate via the decomposition directly on a grid
  auto grid = log_grid(0.01, 100.0, 256);
  double prev = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    double v = td.eval(grid[i]);
    CHECK(v >= prev - 1e-12);  // nondecreasing
    prev = v;
  }
  CHECK(td.eval(0.0) == doctest::Approx(0.0));
  // chord concavity of the decomposition on consecutive triples
  for (size_t i = 0; i + 2 < grid.size(); ++i) {
    double a = grid[i], b = grid[i + 1], c = grid[i + 2];
    double chord = td.eval(a) + (td.eval(c) - td.eval(a)) * (b - a) / (c - a);
    CHECK(td.eval(b) >= chord - 1e-9);
  }
  (void)as_phi;
}

TEST_CASE("decompose rejects an insufficient term budget") {
  CHECK_THROWS_AS(decompose(MetricTransform::snowflake(0.5), 1e-6, 1e6, 4), validation_error);
}

TEST_CASE("decompose_power") {
  // identity, q=2: omega(t)=t
  auto td = decompose_power(MetricTransform::identity(), 2.0, 0.1, 10.0);
  CHECK(td.alpha0 == doctest::Approx(1.0));
  CHECK(td.terms.empty());

  // sqrt, q=2: omega(t) = (t^{1/2})^... phi(sqrt(t))^2 = t
  auto td2 = decompose_power(MetricTransform::snowflake(0.5), 2.0, 0.1, 10.0);
  for (double t : log_grid(0.1, 10.0, 64)) {
    double w = td2.eval(t * t);
    CHECK(w >= t * t / 2.0 - 1e-9);
    CHECK(w <= 3.0 * t * t + 1e-9);
  }

  // min{t,2}, q=2 -> min{t^2, 4} exactly
  auto td3 = decompose_power(MetricTransform::truncation(2.0), 2.0, 0.1, 10.0);
  CHECK(td3.alpha0 == 0.0);
  REQUIRE(td3.terms.size() == 1);
  CHECK(td3.terms[0].first == doctest::Approx(1.0));
  CHECK(td3.terms[0].second == doctest::Approx(4.0));

  // cor bounds: 1/3 phi_hat(t^q) <= phi(t)^q <= 2 phi_hat(t^q)
  for (double q : {2.0, 3.0}) {
    auto phi = MetricTransform::log1p();
    auto td4 = decompose_power(phi, q, 0.05, 50.0, 64);
    for (double t : log_grid(0.05, 50.0, 512)) {
      double hat = td4.eval(std::pow(t, q));
      double val = std::pow(phi(t), q);
      CHECK(val >= hat / 3.0 - 1e-12);
      CHECK(val <= 2.0 * hat + 1e-12);
    }
  }
}

TEST_CASE("apply_transform validates and maps entrywise") {
  Rng rng(41);
  auto m = testutil::random_metric(6, rng);
  auto out = apply_transform(m, MetricTransform::identity());
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) CHECK(out(i, j) == doctest::Approx(m(i, j)));

  auto trunc = apply_transform(m, MetricTransform::truncation(3.141592653589793));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      CHECK(trunc(i, j) == doctest::Approx(std::min(m(i, j), 3.141592653589793)));

  // snowflake 1/2 of the {0,1,4} line: {0,1,2}
  FiniteMetric line(3);
  line.set(0, 1, 1.0);
  line.set(1, 2, 3.0);
  line.set(0, 2, 4.0);
  auto snow = apply_transform(line, MetricTransform::snowflake(0.5));
  CHECK(snow(0, 2) == doctest::Approx(2.0));
  CHECK(snow(0, 1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(apply_transform(m, MetricTransform::snowflake(2.0)), validation_error);
}

TEST_CASE("apply_transform output is a metric for random (metric, phi) draws") {
  Rng rng(43);
  std::vector<MetricTransform> phis = {
      MetricTransform::identity(), MetricTransform::snowflake(0.5),
      MetricTransform::snowflake(0.3), MetricTransform::log1p(),
      MetricTransform::truncation(2.0),
      MetricTransform::piecewise_linear({{1.0, 2.0}, {3.0, 3.0}})};
  for (int trial = 0; trial < 30; ++trial) {
    auto m = testutil::random_metric(3 + rng.index(6), rng);
    const auto& phi = phis[rng.index(static_cast<int>(phis.size()))];
    CHECK(is_metric(apply_transform(m, phi)));
  }
}

TEST_CASE("transform json and decomposition csv round-trip") {
  auto phi = MetricTransform::truncation(2.5);
  auto back = MetricTransform::from_json(phi.to_json());
  CHECK(back.kind == MetricTransform::Kind::Truncation);
  CHECK(back.tau == doctest::Approx(2.5));

  auto td = decompose(MetricTransform::snowflake(0.5), 0.1, 10.0);
  std::stringstream ss;
  write_decomposition_csv(ss, td);
  auto td2 = read_decomposition_csv(ss);
  CHECK(td2.alpha0 == doctest::Approx(td.alpha0));
  REQUIRE(td2.terms.size() == td.terms.size());
  for (size_t i = 0; i < td.terms.size(); ++i)
    CHECK(td2.terms[i].second == doctest::Approx(td.terms[i].second));
}
