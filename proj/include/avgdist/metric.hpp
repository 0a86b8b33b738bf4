#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avgdist/util.hpp"

namespace avgdist {

/// Finite metric space: symmetric nonnegative n x n matrix, zero diagonal,
/// triangle inequality within relative tolerance 1e-9.
struct FiniteMetric {
  int n = 0;
  std::vector<double> d;  // row-major n*n

  FiniteMetric() = default;
  explicit FiniteMetric(int n_) : n(n_), d(static_cast<size_t>(n_) * n_, 0.0) {}

  double& at(int i, int j) { return d[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return at(i, j); }

  void set(int i, int j, double v) {
    at(i, j) = v;
    at(j, i) = v;
  }

  double max_distance() const;
  /// Smallest strictly positive entry (0 if none).
  double min_positive_distance() const;
};

struct WeightedGraph {
  struct Edge {
    int u, v;
    double w;
  };
  int n = 0;
  std::vector<Edge> edges;
};

/// Index-to-index embedding map (total on the source index set).
using EmbeddingMap = std::vector<int>;

struct MetricViolation {
  enum Kind { NegativeEntry, Diagonal, Symmetry, Triangle } kind;
  int i, j, k;  // witnessing indices (k used for triangle only)
  double lhs, rhs;
};

struct DistortionResult {
  double distortion;  // >= 1
  double scale;       // witnessing s with d_src <= s*d_dst(f) <= D*d_src
};

inline constexpr double kMetricRelTol = 1e-9;

/// Empty report iff zero diagonal, symmetry, and triangle inequality hold.
std::vector<MetricViolation> validate_metric(const FiniteMetric& m);
bool is_metric(const FiniteMetric& m);

/// All-pairs shortest paths; pairs in distinct components get `cap`.
/// Throws validation_error("disconnected") if cap is absent and g is not
/// connected.
FiniteMetric shortest_path_metric(const WeightedGraph& g,
                                  std::optional<double> cap = std::nullopt);

/// Mean of d over ordered pairs of `points` (diagonal included).
double average_distance(const FiniteMetric& m, const std::vector<int>& points);
double average_distance(const FiniteMetric& m);

/// Minimal D and witnessing scale s with d_src <= s*d_dst(f) <= D*d_src.
/// Throws validation_error("infinite distortion") if f collapses a pair at
/// positive source distance.
DistortionResult distortion(const FiniteMetric& src, const FiniteMetric& dst,
                            const EmbeddingMap& f);

/// Same contract with the target given as pulled-back pairwise distances:
/// target(i,j) = distance between the images of source points i and j.
DistortionResult distortion_pairwise(const FiniteMetric& src,
                                     const std::vector<double>& target_d);

// --- file formats ---
// Metric file: first line "n", then n rows of n comma-separated decimals.
// Graph file: first line "n m", then m lines "u v w" (0-based, w optional).
FiniteMetric read_metric_csv(std::istream& in);
FiniteMetric read_metric_csv_file(const std::string& path);
void write_metric_csv(std::ostream& out, const FiniteMetric& m);
void write_metric_csv_file(const std::string& path, const FiniteMetric& m);
WeightedGraph read_graph_file(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph_file(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

}  // namespace avgdist
