#pragma once

#include <functional>
#include <vector>

#include "avgdist/graph.hpp"
#include "avgdist/metric.hpp"

namespace avgdist {

/// Fixed unordered query pairs plus a scaling; duplicates permitted
/// (multigraph semantics). `collapsed` counts pairs dropped because both
/// endpoints landed on the same point under a surjection; they take part in
/// the per-pair mean as zero-distance queries.
struct QuerySet {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  double sigma = 0.0;
  long long collapsed = 0;
  double ordered_correction = 1.0;  // (n-1)/n for the sampling baseline

  long long full_count() const { return static_cast<long long>(pairs.size()) + collapsed; }
};

/// Balanced surjection v -> v mod n of the expander vertices onto [n]; one
/// query pair per expander edge, sigma = 1/m by default (calibration rescales).
QuerySet universal_query_set(const RegularGraph& expander, int n);

using DistanceOracle = std::function<double(int, int)>;

/// sigma * sum of oracle responses over the query pairs.
double estimate_average(const QuerySet& q, const DistanceOracle& oracle);

struct SandwichReport {
  bool lower_ok;       // mean-over-pairs / 2 <= average distance
  double upper_ratio;  // average distance / mean-over-pairs
  double mean_over_pairs;
  double exact_average;
};

/// The two halves of the universal-approximator sandwich for a query set
/// built from a regular query graph, evaluated on m restricted to `points`.
SandwichReport sandwich_check(const QuerySet& q, const FiniteMetric& m,
                              const std::vector<int>& points);

/// Measures the empirical upper constant C = max(exact/mean) over a corpus
/// and sets q.sigma = C / m_full. Returns C.
double calibrate_sigma(QuerySet& q, const std::vector<FiniteMetric>& corpus,
                       const std::vector<std::vector<int>>& corpus_points);

struct Transcript {
  std::vector<std::pair<std::pair<int, int>, double>> rounds;
  double estimate = 0.0;
};

/// Adaptive strategy: next pair from the history, estimate from the full
/// transcript.
struct Strategy {
  std::function<std::pair<int, int>(const Transcript&)> next;
  std::function<double(const Transcript&)> estimate;
};

/// Plays m rounds against the oracle; repeated pairs get their stored
/// response. Throws on out-of-range pairs.
Transcript run_game(const Strategy& strategy, const DistanceOracle& oracle, int n, int rounds);

/// m uniform random distinct-pair draws, sigma = 1/m; the (n-1)/n ordered-pair
/// correction is recorded in the result.
QuerySet sample_baseline(int n, int m, uint64_t seed);

}  // namespace avgdist
