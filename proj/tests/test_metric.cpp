#include <cmath>
#include <sstream>

#include "avgdist/metric.hpp"
#include "avgdist/transform.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avgdist;

TEST_CASE("shortest_path_metric basics") {
  WeightedGraph path;
  path.n = 3;
  path.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
  auto m = shortest_path_metric(path);
  CHECK(m(0, 2) == doctest::Approx(2.0));

  WeightedGraph tri;
  tri.n = 3;
  tri.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}};
  auto mt = shortest_path_metric(tri);
  CHECK(mt(0, 2) == doctest::Approx(2.0));  // heavy edge bypassed

  WeightedGraph iso;
  iso.n = 2;
  auto mc = shortest_path_metric(iso, 5.0);
  CHECK(mc(0, 1) == doctest::Approx(5.0));
  CHECK_THROWS_AS(shortest_path_metric(iso), validation_error);
}

TEST_CASE("shortest_path_metric agrees with the Floyd-Warshall oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + rng.index(8);
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.real() < 0.6) g.edges.push_back({i, j, 0.5 + 4.0 * rng.real()});
    // ensure connectivity with a spanning path
    for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0 + rng.real()});
    auto m = shortest_path_metric(g);
    auto oracle = testutil::floyd_warshall(g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(m(i, j) == doctest::Approx(oracle[static_cast<size_t>(i) * n + j]));
  }
}

TEST_CASE("shortest_path_metric is idempotent") {
  Rng rng(3);
  auto m = testutil::random_metric(7, rng);
  WeightedGraph complete;
  complete.n = m.n;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) complete.edges.push_back({i, j, m(i, j)});
  auto again = shortest_path_metric(complete);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) CHECK(again(i, j) == doctest::Approx(m(i, j)));
}

TEST_CASE("validate_metric witnesses") {
  FiniteMetric ok(3);
  ok.set(0, 1, 1.0);
  ok.set(0, 2, 1.0);
  ok.set(1, 2, 1.0);
  CHECK(validate_metric(ok).empty());

  FiniteMetric tri(3);
  tri.set(0, 1, 1.0);
  tri.set(1, 2, 1.0);
  tri.set(0, 2, 10.0);
  auto report = validate_metric(tri);
  REQUIRE(!report.empty());
  bool found = false;
  for (const auto& v : report) found = found || v.kind == MetricViolation::Triangle;
  CHECK(found);

  FiniteMetric asym(2);
  asym.at(0, 1) = 1.0;
  asym.at(1, 0) = 2.0;
  auto rep2 = validate_metric(asym);
  REQUIRE(!rep2.empty());
  CHECK(rep2.front().kind == MetricViolation::Symmetry);
}

TEST_CASE("average_distance") {
  FiniteMetric two(2);
  two.set(0, 1, 1.0);
  CHECK(average_distance(two) == doctest::Approx(0.5));  // (0+1+1+0)/4

  FiniteMetric flat(4);  // all points identical
  CHECK(average_distance(flat) == doctest::Approx(0.0));

  for (int n : {3, 5, 9}) {
    FiniteMetric uni(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) uni.set(i, j, 1.0);
    CHECK(average_distance(uni) == doctest::Approx((n - 1.0) / n));
  }
}

TEST_CASE("average over ordered pairs = 2/n^2 * unordered sum") {
  Rng rng(5);
  auto m = testutil::random_metric(6, rng);
  double unordered = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) unordered += m(i, j);
  CHECK(average_distance(m) == doctest::Approx(2.0 * unordered / (m.n * m.n)));
}

TEST_CASE("distortion") {
  Rng rng(17);
  auto m = testutil::random_metric(5, rng);
  EmbeddingMap id(m.n);
  for (int i = 0; i < m.n; ++i) id[i] = i;
  CHECK(distortion(m, m, id).distortion == doctest::Approx(1.0));

  // doubling map into the same metric: scale absorbs
  FiniteMetric doubled(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) doubled.at(i, j) = 2.0 * m(i, j);
  CHECK(distortion(m, doubled, id).distortion == doctest::Approx(1.0));

  // 3-point lines {0,1,2} -> {0,1,1.5}
  FiniteMetric src(3), dst(3);
  src.set(0, 1, 1.0);
  src.set(1, 2, 1.0);
  src.set(0, 2, 2.0);
  dst.set(0, 1, 1.0);
  dst.set(1, 2, 0.5);
  dst.set(0, 2, 1.5);
  // pair ratios: 1, 1/2, 3/4 -> distortion = max/min = 2
  auto r = distortion(src, dst, id = {0, 1, 2});
  CHECK(r.distortion == doctest::Approx(2.0));

  EmbeddingMap collapse = {0, 0, 2};
  CHECK_THROWS_AS(distortion(src, dst, collapse), validation_error);
}

TEST_CASE("distortion is invariant under rescaling") {
  Rng rng(23);
  auto src = testutil::random_metric(6, rng);
  auto dst = testutil::random_metric(6, rng);
  EmbeddingMap id(6);
  for (int i = 0; i < 6; ++i) id[i] = i;
  double base = distortion(src, dst, id).distortion;
  FiniteMetric scaled(6);
  for (size_t i = 0; i < dst.d.size(); ++i) scaled.d[i] = 7.25 * dst.d[i];
  scaled.n = 6;
  CHECK(distortion(src, scaled, id).distortion == doctest::Approx(base));
}

TEST_CASE("metric csv and graph file round-trip") {
  Rng rng(29);
  auto m = testutil::random_metric(5, rng);
  std::stringstream ss;
  write_metric_csv(ss, m);
  auto back = read_metric_csv(ss);
  REQUIRE(back.n == m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) CHECK(back(i, j) == doctest::Approx(m(i, j)));

  WeightedGraph g;
  g.n = 4;
  g.edges = {{0, 1, 1.0}, {1, 2, 2.5}, {2, 3, 1.0}};
  std::stringstream gs;
  write_graph_file(gs, g);
  auto gb = read_graph_file(gs);
  REQUIRE(gb.edges.size() == g.edges.size());
  CHECK(gb.edges[1].w == doctest::Approx(2.5));

  std::stringstream defaulted("3 2\n0 1\n1 2\n");
  auto gd = read_graph_file(defaulted);
  CHECK(gd.edges[0].w == doctest::Approx(1.0));  // optional weight defaults to 1
}
