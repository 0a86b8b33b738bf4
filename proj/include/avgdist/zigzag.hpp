#pragma once

#include <optional>
#include <vector>

#include "avgdist/graph.hpp"

namespace avgdist {

/// Rotation-map zigzag product: small step in h, big step in g1, small step
/// in h. Requires |V_h| = deg(g1); result has n1*|V_h| vertices, degree d_h^2.
RegularGraph zigzag_product(const RegularGraph& g1, const RegularGraph& h);

inline constexpr long long kDegreeCap = 1 << 20;

/// Cesaro average: multigraph with edge multiplicity sum_t d^{m-1-t} (walk
/// counts of length t); degree m*d^{m-1}; normalized adjacency equals the
/// Cesaro mean of the walk powers.
RegularGraph cesaro_average(const RegularGraph& g, int m);

/// Edge completion to exact degree D: each dart duplicated floor(D/d) times,
/// remaining ports filled with self-loops per vertex.
RegularGraph edge_completion(const RegularGraph& g, int D);

/// 3-regular graph obtained by replacing each vertex with a cycle over its
/// ports; n*d vertices (within the 36*d*n budget).
RegularGraph three_regularize(const RegularGraph& g);

struct IterationConfig {
  RegularGraph H;  // d0-regular on n0 vertices
  int m0 = 1;
  int j_max = 2;
  long long vertex_cap = 10000000;
  long long spectral_cap = 2000000;  // max n*d for the per-stage spectral report
};

struct ZigzagStage {
  int j;
  RegularGraph graph;
  std::optional<double> gamma2_plus;  // absent when past the spectral cap
};

struct ZigzagIteration {
  std::vector<ZigzagStage> stages;
  bool truncated = false;  // vertex cap reached before j_max
};

/// G_1 = complete graph with self-loops on n0 vertices; G_{j+1} =
/// C_{n0}(A_{m0}(G_j (z) H)). |V_{G_j}| = n0^j, n0-regular.
ZigzagIteration zigzag_iterate(const IterationConfig& cfg);

}  // namespace avgdist
