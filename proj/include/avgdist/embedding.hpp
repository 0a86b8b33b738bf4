#pragma once

#include <vector>

#include "avgdist/graph.hpp"
#include "avgdist/metric.hpp"

namespace avgdist {

/// One-dimensional simplicial complex of a weighted graph, sampled at
/// resolution r: each edge carries r-1 interior points at fractions j/r.
/// Rows 0..n-1 are the vertices; interior points follow edge by edge.
struct SubdividedComplex {
  WeightedGraph base;
  int resolution = 1;
  FiniteMetric metric;                       // shortest-path metric on all points
  std::vector<std::pair<int, int>> interior;  // (edge index, j) per interior row

  int vertex_row(int v) const { return v; }
  int interior_row(int point_idx) const { return base.n + point_idx; }
  int rows() const { return base.n + static_cast<int>(interior.size()); }
};

SubdividedComplex subdivide(const WeightedGraph& g, int r);

inline constexpr long long kEmbeddingSizeCap = 10000000;

struct ThreeRegularEmbedding {
  RegularGraph graph;
  EmbeddingMap map;  // source point -> vertex of graph
  double distortion;
  bool padded = false;  // input had < 3 points and was padded
};

/// Embeds any finite metric into a simple unweighted 3-regular graph with
/// distortion at most 1+eps (integerize, scale, subdivide, cycle-replace,
/// mirror with a tagged copy).
ThreeRegularEmbedding metric_to_3regular(const FiniteMetric& m, double eps);

/// d-2 disjoint copies of a simple 3-regular graph joined by complete
/// cross-matchings between the copies of each vertex; each copy is isometric
/// to the input.
RegularGraph extend_to_dregular(const RegularGraph& g, int d);

struct OuterExtension {
  std::vector<std::vector<double>> coords;  // per requested sample row
  double lipschitz_upper;                   // measured expansion over sample pairs
  double contraction_lower;                 // measured contraction over sample pairs
  double distortion;
  double L;  // certified Lipschitz constant of phi on W
  bool degenerate = false;  // alpha == 0
};

/// Bi-Lipschitz outer extension of phi: W -> R^dim to the sampled points of
/// Sigma(W): convex interpolation plus a per-edge tent coordinate of weight
/// alpha*(L+1). Expansion <= sqrt(L^2 + alpha^2 (L+1)^2) and contraction >=
/// alpha/sqrt(2+alpha^2).
OuterExtension outer_extension(const WeightedGraph& g, const std::vector<int>& W,
                               const std::vector<std::vector<double>>& phi, double alpha,
                               const SubdividedComplex& complex,
                               const std::vector<int>& sample_rows,
                               long long max_pairs = 20000000);

/// The stated optimum alpha = sqrt(sqrt(2) L / (L+1)).
double outer_extension_optimal_alpha(double L);

}  // namespace avgdist
