#include <cmath>

#include "avgdist/zigzag.hpp"
#include "doctest.h"

using namespace avgdist;

namespace {

double gamma2p(const RegularGraph& g) { return normalized_spectrum(g).gamma2_plus; }

}  // namespace

TEST_CASE("zigzag_product sizes and degrees") {
  auto k4 = complete_graph(4);  // 3-regular
  auto c3 = cycle_graph(3);     // 2-regular on 3 = deg(K4) vertices
  auto z = zigzag_product(k4, c3);
  CHECK(z.n == 12);
  CHECK(z.d == 4);
  CHECK(z.rotation_is_involution());

  CHECK_THROWS_AS(zigzag_product(k4, cycle_graph(4)), validation_error);
}

TEST_CASE("zigzag spectral submultiplicativity on the K4 x C3 instance") {
  auto z = zigzag_product(complete_graph(4), cycle_graph(3));
  double lhs = gamma2p(z);
  double rhs = gamma2p(complete_graph(4)) * std::pow(gamma2p(cycle_graph(3)), 2.0);
  CHECK(lhs <= rhs + 1e-9);
}

TEST_CASE("zigzag submultiplicativity over random pairs") {
  Rng rng(5);
  int checked = 0;
  for (uint64_t seed = 0; checked < 12; ++seed) {
    int d1 = 3 + static_cast<int>(seed % 3);       // 3..5
    int n1 = d1 + 1 + 2 * static_cast<int>(seed % 4);
    if ((n1 * d1) % 2) ++n1;
    RegularGraph g1, h;
    try {
      g1 = random_regular(n1, d1, seed);
      int d2 = 2 + static_cast<int>(seed % 2);
      if ((d1 * d2) % 2) d2 = 2;
      h = random_regular(d1, d2, seed + 1000);
    } catch (const validation_error&) {
      continue;
    }
    auto z = zigzag_product(g1, h);
    CHECK(z.n == g1.n * h.n);
    CHECK(z.d == h.d * h.d);
    double l1 = gamma2p(g1), l2 = gamma2p(h), lz = gamma2p(z);
    if (std::isfinite(l1) && std::isfinite(l2)) CHECK(lz <= l1 * l2 * l2 + 1e-9);
    ++checked;
  }
  (void)rng;
}

TEST_CASE("cesaro_average") {
  auto m1 = cesaro_average(complete_graph(4), 1);
  CHECK(m1.d == 1);  // identity walk: one self-loop per vertex
  for (int v = 0; v < 4; ++v) CHECK(m1.at(v, 0).v == v);

  auto k2 = cesaro_average(complete_graph(2), 2);
  CHECK(k2.d == 2);  // m d^{m-1} with d = 1
  auto s = normalized_spectrum(k2);
  CHECK(s.lambda2 == doctest::Approx(0.0));  // (I+A)/2 spectrum {1, 0}
  CHECK(s.lambda_n == doctest::Approx(0.0));

  // degree m*d^{m-1}, adjacency = Cesaro mean of powers (1e-12)
  for (uint64_t seed : {1, 4}) {
    auto g = random_regular(8, 3, seed);
    for (int m = 1; m <= 3; ++m) {
      auto avg = cesaro_average(g, m);
      CHECK(avg.d == m * static_cast<int>(std::pow(3, m - 1)));
      auto A = normalized_adjacency(g);
      // dense mean of powers
      int n = g.n;
      std::vector<double> power(A.size(), 0.0), acc(A.size(), 0.0), cur(A.size(), 0.0);
      for (int i = 0; i < n; ++i) cur[i * n + i] = 1.0;  // A^0
      for (int t = 0; t < m; ++t) {
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i] / m;
        // cur = cur * A
        std::vector<double> next(A.size(), 0.0);
        for (int i = 0; i < n; ++i)
          for (int kk = 0; kk < n; ++kk) {
            double c = cur[i * n + kk];
            if (c == 0.0) continue;
            for (int j = 0; j < n; ++j) next[i * n + j] += c * A[kk * n + j];
          }
        cur = next;
      }
      auto got = normalized_adjacency(avg);
      for (size_t i = 0; i < acc.size(); ++i) CHECK(std::abs(got[i] - acc[i]) <= 1e-12);
      (void)power;
    }
  }
}

TEST_CASE("edge_completion") {
  auto g = random_regular(8, 3, 11);
  auto same = edge_completion(g, 3);
  CHECK(same.d == 3);

  auto doubled = edge_completion(g, 6);
  CHECK(doubled.d == 6);
  auto a = normalized_adjacency(g);
  auto b = normalized_adjacency(doubled);
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
  CHECK(std::abs(gamma2p(g) - gamma2p(doubled)) <= 1e-12);

  auto padded = edge_completion(g, 4);  // one self-loop per vertex
  CHECK(padded.d == 4);
  double before = gamma2p(g), after = gamma2p(padded);
  CHECK(after <= 2.0 * before + 1e-9);
}

TEST_CASE("three_regularize") {
  auto g = complete_graph(4);
  auto tr = three_regularize(g);
  CHECK(tr.d == 3);
  CHECK(tr.n == 12);
  CHECK(tr.n <= 36 * 3 * 4);
  CHECK(tr.connected());
  CHECK(girth(tr) >= 3);
  auto s = normalized_spectrum(tr);
  CHECK(std::isfinite(s.gamma2));
}

TEST_CASE("zigzag_iterate") {
  IterationConfig cfg;
  cfg.H = random_regular(64, 2, 3);  // 64 >= 2^3, m0 <= floor(log 64 / (3 log 2)) = 2
  cfg.m0 = 2;
  cfg.j_max = 2;
  auto it = zigzag_iterate(cfg);
  REQUIRE(it.stages.size() == 2);
  CHECK(it.stages[0].graph.n == 64);
  CHECK(it.stages[0].graph.d == 64);
  REQUIRE(it.stages[0].gamma2_plus.has_value());
  CHECK(*it.stages[0].gamma2_plus == doctest::Approx(1.0));  // J/n seed graph
  CHECK(it.stages[1].graph.n == 64 * 64);
  CHECK(it.stages[1].graph.d == 64);

  IterationConfig bad;
  bad.H = random_regular(8, 3, 1);  // 8 < 27
  bad.m0 = 1;
  CHECK_THROWS_AS(zigzag_iterate(bad), validation_error);
}

TEST_CASE("rotation maps stay involutions through every operation") {
  auto g = random_regular(10, 4, 21);
  auto h = random_regular(4, 2, 22);
  CHECK(zigzag_product(g, h).rotation_is_involution());
  CHECK(cesaro_average(g, 2).rotation_is_involution());
  CHECK(edge_completion(g, 9).rotation_is_involution());
  CHECK(three_regularize(g).rotation_is_involution());
}
