#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avgdist/approximator.hpp"
#include "avgdist/metric.hpp"

namespace avgdist {

/// State of the adaptive lower-bound game: queried edges with weights in [k],
/// degree-derived thresholds h, and the incrementally maintained shortest-path
/// metric of the query graph capped at k+1 (values above the cap never affect
/// the adversary's answers).
class AdversaryState {
 public:
  AdversaryState(int n, int k, double theta);
  /// theta derived from a query budget: theta = m / n^{(k+1)/k}.
  static AdversaryState from_budget(int n, int k, long long m);

  int n() const { return n_; }
  int k() const { return k_; }
  double theta() const { return theta_; }
  const std::vector<std::pair<std::pair<int, int>, int>>& edges() const { return edges_; }
  int degree(int x) const { return deg_[x]; }
  /// Capped query-graph distance min{d_G, k+1}.
  int dist(int x, int y) const { return dist_[static_cast<size_t>(x) * n_ + y]; }

  /// max h in {0,...,k-1} with deg(x) >= theta^{1/2} (n^{h/k} - 1).
  int h_value(int x) const;

  /// The adversary's answer; updates the state unless the pair was already
  /// queried (then the stored weight is returned unchanged).
  int answer_query(int x, int y);

  bool queried(int x, int y) const;
  std::optional<int> stored_weight(int x, int y) const;

  /// Capped shortest-path metric min{d_G, k+1} as a FiniteMetric.
  FiniteMetric finalize_upper() const;

  struct LowerResult {
    FiniteMetric metric;
    bool feasible = false;
    bool exact = false;     // exact small-n optimum was computed
    double objective = 0.0;  // fixpoint sum over unordered pairs
    std::optional<double> exact_objective;  // exhaustive optimum when n is small
  };

  /// Minimizer of the pair-sum subject to the boundary/threshold/triangle/cap
  /// constraints: iterative raising to the maximal active lower bound; exact
  /// branch-and-bound over half-integral values when n <= exact_threshold.
  LowerResult finalize_lower(int exact_threshold = 8) const;

 private:
  void insert_edge(int x, int y, int w);

  int n_, k_;
  double theta_;
  std::vector<double> h_thresholds_;  // theta^{1/2} (n^{h/k}-1), h = 0..k-1
  std::vector<std::pair<std::pair<int, int>, int>> edges_;
  std::map<std::pair<int, int>, int> weight_;
  std::vector<int> deg_;
  std::vector<int> dist_;  // capped at k+1
};

struct SeparationReport {
  double avg_upper = 0.0;
  double avg_lower = 0.0;
  double ratio = 0.0;
  double fraction_upper_at_k_plus_1 = 0.0;
  double fraction_lower_at_half = 0.0;
  bool agreement_on_E = false;
  bool lower_feasible = false;
  int lower_structure_violations = 0;
};

SeparationReport verify_separation(const AdversaryState& state);
SeparationReport separation_report(const AdversaryState& state, const FiniteMetric& upper,
                                   const AdversaryState::LowerResult& lower);

/// avg(upper^p) / avg(lower^p) over ordered pairs.
double power_p_report(const FiniteMetric& upper, const FiniteMetric& lower, double p);

struct BallGrowthRow {
  int r;
  int max_ball;     // max |B(x,r)| over eligible centers
  double bound;     // 2^{k-1} theta^{1/2} n^{r/k}
  double constant;  // max_ball / bound
};

/// Per-radius max ball sizes of the capped query-graph metric against the
/// 2^{k-1} theta^{1/2} n^{r/k} bound; radius k restricted to centers outside
/// the high-degree set.
std::vector<BallGrowthRow> ball_growth_report(const AdversaryState& state, long long m);

struct NonadaptiveResult {
  FiniteMetric upper, lower;
  SeparationReport report;
  bool fallback = false;        // eta < 3: disconnected-metric witness applies
  double fallback_ratio = 0.0;  // ratio of the two d_M witnesses when fallback
};

/// Oblivious adversary of the non-adaptive bound: weight 1 inside the
/// low-degree set, k+1 touching the high-degree set S.
NonadaptiveResult nonadaptive_adversary(int n, const std::vector<std::pair<int, int>>& E, int k,
                                        double theta);

struct SmallAlphaResult {
  FiniteMetric upper, lower;
  double ratio = 0.0;
  double formula = 0.0;  // 4 (1 - eps/2) / (1 + eps)
};

/// Answers 1 on every queried pair; upper 2 / lower 1/2 elsewhere.
SmallAlphaResult small_alpha_adversary(int n, const std::vector<std::pair<int, int>>& E,
                                       double eps);

// --- built-in strategies for exercising the adversary ---
Strategy random_pairs_strategy(int n, uint64_t seed);
Strategy greedy_low_degree_strategy(int n);
Strategy bfs_frontier_strategy(int n);
Strategy fixed_pairs_strategy(std::vector<std::pair<int, int>> pairs);

struct GameResult {
  AdversaryState state;
  Transcript transcript;
};

GameResult run_adversary_game(int n, int k, long long m, const Strategy& strategy);

}  // namespace avgdist
