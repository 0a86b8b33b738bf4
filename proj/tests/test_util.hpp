#pragma once

#include <vector>

#include "avgdist/metric.hpp"
#include "avgdist/util.hpp"

namespace avgdist::testutil {

/// Random metric via shortest paths over a dense random weighted graph
/// (always a true metric).
inline FiniteMetric random_metric(int n, Rng& rng, double aspect = 8.0) {
  WeightedGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.edges.push_back({i, j, 1.0 + (aspect - 1.0) * rng.real()});
  return shortest_path_metric(g);
}

/// Independent all-pairs oracle: Floyd-Warshall over the edge list.
inline std::vector<double> floyd_warshall(const WeightedGraph& g) {
  const int n = g.n;
  std::vector<double> d(static_cast<size_t>(n) * n, kInf);
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i) * n + i] = 0.0;
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    size_t a = static_cast<size_t>(e.u) * n + e.v;
    size_t b = static_cast<size_t>(e.v) * n + e.u;
    d[a] = std::min(d[a], e.w);
    d[b] = std::min(d[b], e.w);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<size_t>(i) * n + j] =
            std::min(d[static_cast<size_t>(i) * n + j],
                     d[static_cast<size_t>(i) * n + k] + d[static_cast<size_t>(k) * n + j]);
  return d;
}

}  // namespace avgdist::testutil
