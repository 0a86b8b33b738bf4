#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avgdist/metric.hpp"

namespace avgdist {

/// Regular multigraph stored as a rotation map (vertex, port) -> (vertex, port)
/// with rot o rot = identity. A self-loop is a fixed point of the involution
/// and occupies one port.
struct RegularGraph {
  struct Dart {
    int v;
    int port;
  };

  int n = 0;
  int d = 0;
  std::vector<Dart> rot;  // size n*d, index v*d + port

  RegularGraph() = default;
  RegularGraph(int n_, int d_) : n(n_), d(d_), rot(static_cast<size_t>(n_) * d_, Dart{-1, -1}) {}

  Dart& at(int v, int port) { return rot[static_cast<size_t>(v) * d + port]; }
  const Dart& at(int v, int port) const { return rot[static_cast<size_t>(v) * d + port]; }

  /// Neighbor reached from (v, port).
  int step(int v, int port) const { return at(v, port).v; }

  bool rotation_is_involution() const;
  /// Ports filled and involution holds.
  void check_valid() const;

  /// Edge list with one line per dart orbit: loops (fixed points) once,
  /// parallel edges once per occurrence.
  WeightedGraph to_weighted(double w = 1.0) const;

  bool connected() const;
};

/// Build a rotation map from an edge list: a line "u u" is one loop port.
/// Throws unless every vertex ends up with the same degree.
RegularGraph regular_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

RegularGraph read_regular_graph(const std::string& path);
void write_regular_graph(const std::string& path, const RegularGraph& g);

RegularGraph complete_graph(int n);             // K_n, (n-1)-regular
RegularGraph complete_graph_with_loops(int n);  // K_n plus one loop per vertex, n-regular
RegularGraph cycle_graph(int n);                // C_n, 2-regular

/// Simple d-regular graph via configuration-model pairing with rejection of
/// loops and multi-edges; deterministic per seed. Requires n*d even, d < n.
RegularGraph random_regular(int n, int d, uint64_t seed, int max_attempts = 1000);

inline constexpr int kGirthInfinity = -1;

/// Length of the shortest simple cycle: loop -> 1, parallel edge -> 2,
/// forest -> kGirthInfinity.
int girth(const RegularGraph& g);
/// Same on a plain edge list (accepts non-regular graphs).
int girth_edges(int n, const std::vector<std::pair<int, int>>& edges);

int diameter(const RegularGraph& g);  // unweighted; throws on disconnected

struct ConductanceResult {
  double value;
  bool exact;                // subset enumeration vs search upper bound
  std::vector<int> witness;  // the cut side containing vertex 0
};

/// min over nonempty proper S of n*|E(S,~S)| / (d*|S|*|~S|); exact by subset
/// enumeration when n <= exact_threshold, otherwise a flagged search bound.
ConductanceResult conductance(const RegularGraph& g, int exact_threshold = 22);

struct SpectrumResult {
  double lambda2;   // second-largest normalized adjacency eigenvalue
  double lambda_n;  // smallest
  double gamma2;    // 1/(1-lambda2)
  double gamma2_plus;  // 1/(1-max{lambda2,-lambda_n}); kInf when bipartite
  bool bipartite_flag;
};

/// Eigenvalues of the degree-normalized adjacency (self-loops contribute).
/// Dense symmetric solve for n <= 2000, power iteration with deflation above.
SpectrumResult normalized_spectrum(const RegularGraph& g);

/// Dense normalized adjacency (row-major n*n), for tests and small solves.
std::vector<double> normalized_adjacency(const RegularGraph& g);

}  // namespace avgdist
