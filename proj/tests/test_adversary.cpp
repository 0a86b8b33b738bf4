#include <cmath>

#include "avgdist/adversary.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace avgdist;

TEST_CASE("h_value") {
  auto st = AdversaryState(16, 2, 0.25);
  CHECK(st.h_value(0) == 0);  // degree 0

  auto k1 = AdversaryState(16, 1, 0.25);
  CHECK(k1.h_value(3) == 0);  // k = 1: range is {0}

  // n=10^4, k=2, theta=0.01, deg=25 -> h=1
  AdversaryState big(10000, 2, 0.01);
  auto strat = fixed_pairs_strategy({});
  (void)strat;
  for (int i = 1; i <= 25; ++i) big.answer_query(0, i);
  CHECK(big.degree(0) == 25);
  CHECK(big.h_value(0) == 1);
}

TEST_CASE("answer_query basics") {
  AdversaryState st(10, 2, 0.5);
  CHECK(st.answer_query(0, 1) == 1);  // first query ever
  CHECK(st.answer_query(0, 1) == 1);  // repeat returns the stored weight
  CHECK(st.edges().size() == 1);

  // k=1: every answer is 1
  AdversaryState k1(10, 1, 0.5);
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    int a = rng.index(10), b = rng.index(9);
    if (b >= a) ++b;
    CHECK(k1.answer_query(a, b) == 1);
  }
}

TEST_CASE("weights stay in [k] and match the query-graph distance") {
  for (int k : {1, 2, 3}) {
    auto game = run_adversary_game(30, k, 60, random_pairs_strategy(30, 11));
    for (const auto& [uv, w] : game.state.edges()) {
      CHECK(w >= 1);
      CHECK(w <= k);
      CHECK(game.state.dist(uv.first, uv.second) == w);
    }
  }
}

TEST_CASE("finalize_upper") {
  // no queries: uniform k+1 off-diagonal
  AdversaryState st(5, 1, 0.5);
  auto up = st.finalize_upper();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(up(i, j) == (i == j ? 0.0 : 2.0));

  // star of k=1 queries: center-adjacent 1, others 2
  AdversaryState star(6, 1, 0.5);
  for (int i = 1; i < 6; ++i) star.answer_query(0, i);
  auto um = star.finalize_upper();
  for (int i = 1; i < 6; ++i) CHECK(um(0, i) == 1.0);
  for (int i = 1; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) CHECK(um(i, j) == 2.0);
  CHECK(is_metric(um));
}

TEST_CASE("finalize_lower on the n=4 single-edge example") {
  AdversaryState st(4, 1, 0.5);
  st.answer_query(0, 1);
  auto lower = st.finalize_lower();
  CHECK(lower.feasible);
  REQUIRE(lower.exact);
  CHECK(lower.objective == doctest::Approx(*lower.exact_objective));
  CHECK(lower.metric(0, 1) == doctest::Approx(1.0));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(i == 0 && j == 1)) CHECK(lower.metric(i, j) == doctest::Approx(0.5));

  auto upper = st.finalize_upper();
  auto rep = separation_report(st, upper, lower);
  CHECK(rep.avg_upper == doctest::Approx(22.0 / 16.0));
  CHECK(rep.avg_lower == doctest::Approx(7.0 / 16.0));
  CHECK(rep.ratio == doctest::Approx(22.0 / 7.0));
  CHECK(rep.agreement_on_E);

  // p = 2 on the same example
  CHECK(power_p_report(upper, lower.metric, 2.0) == doctest::Approx(42.0 / 4.5));
  CHECK(power_p_report(upper, lower.metric, 1.0) == doctest::Approx(rep.ratio));
}

TEST_CASE("empty game separates at exactly 2(k+1)") {
  for (int k : {1, 2, 3}) {
    AdversaryState st(6, k, 0.5);
    auto rep = verify_separation(st);
    CHECK(rep.ratio == doctest::Approx(2.0 * (k + 1)));
    CHECK(power_p_report(st.finalize_upper(), st.finalize_lower().metric, 2.0) ==
          doctest::Approx(std::pow(2.0 * (k + 1), 2.0)));
  }
}

TEST_CASE("lower metric values and feasibility across games") {
  for (int k : {1, 2}) {
    for (uint64_t seed : {1, 2, 3}) {
      auto game = run_adversary_game(24, k, 80, random_pairs_strategy(24, seed));
      auto lower = game.state.finalize_lower();
      CHECK(lower.feasible);
      CHECK(is_metric(lower.metric));
      auto upper = game.state.finalize_upper();
      for (int i = 0; i < 24; ++i)
        for (int j = i + 1; j < 24; ++j) {
          CHECK(lower.metric(i, j) >= 0.5 - 1e-12);
          CHECK(lower.metric(i, j) <= upper(i, j) + 1e-12);
          // upper metric values are integers in {0..k+1}
          CHECK(upper(i, j) == std::floor(upper(i, j)));
          CHECK(upper(i, j) <= k + 1);
        }
    }
  }
}

TEST_CASE("coordinate fixpoint equals the exhaustive optimum at small n") {
  int games = 0;
  for (uint64_t seed = 0; games < 30; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);  // 4..8
    int k = 1 + static_cast<int>(seed % 2);
    long long m = 3 + static_cast<long long>(seed % 12);
    auto game = run_adversary_game(n, k, m, random_pairs_strategy(n, seed));
    auto lower = game.state.finalize_lower(8);
    REQUIRE(lower.exact);
    CHECK(lower.objective == doctest::Approx(*lower.exact_objective));
    ++games;
  }
}

TEST_CASE("verify_separation against every built-in strategy (small n)") {
  for (int k : {1, 2}) {
    int n = 60;
    long long m = static_cast<long long>(std::floor(std::pow(n, 1.0 + 1.0 / (k + 0.5))));
    for (int s = 0; s < 3; ++s) {
      Strategy strat = s == 0   ? random_pairs_strategy(n, 99)
                       : s == 1 ? greedy_low_degree_strategy(n)
                                : bfs_frontier_strategy(n);
      auto game = run_adversary_game(n, k, m, strat);
      auto rep = verify_separation(game.state);
      CHECK(rep.agreement_on_E);
      CHECK(rep.lower_feasible);
      CHECK(rep.ratio > 1.5);
    }
  }
}

TEST_CASE("ball_growth_report") {
  // k=1: no rows (r ranges over [k-1])
  auto g1 = run_adversary_game(20, 1, 40, random_pairs_strategy(20, 3));
  CHECK(ball_growth_report(g1.state, 40).empty());

  auto g2 = run_adversary_game(60, 2, 200, random_pairs_strategy(60, 3));
  auto rows = ball_growth_report(g2.state, 200);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].r == 1);
  CHECK(rows[0].max_ball >= 1);
  CHECK(rows[0].bound > 0.0);
}

TEST_CASE("nonadaptive_adversary") {
  // empty E: ratio 2(k+1)
  auto empty = nonadaptive_adversary(50, {}, 1, 0.5);
  CHECK(empty.report.ratio == doctest::Approx(4.0).epsilon(0.05));

  // perfect matching on n=1000, k=1: ratio approaches 4
  std::vector<std::pair<int, int>> matching;
  for (int i = 0; i < 1000; i += 2) matching.push_back({i, i + 1});
  double theta = 500.0 / std::pow(1000.0, 2.0);
  auto res = nonadaptive_adversary(1000, matching, 1, theta);
  CHECK(!res.fallback);
  CHECK(res.report.ratio == doctest::Approx(3.994).epsilon(0.01));
  CHECK(is_metric(res.lower));
  CHECK(is_metric(res.upper));
  CHECK(res.report.agreement_on_E);

  // degenerate eta < 3: fallback flag with an unbounded-ratio witness
  std::vector<std::pair<int, int>> few = {{0, 1}, {2, 3}};
  auto fb = nonadaptive_adversary(100, few, 2, 1e-4);
  CHECK(fb.fallback);
  CHECK(fb.fallback_ratio > 100.0);
}

TEST_CASE("small_alpha_adversary") {
  // eps = 1, all pairs: both metrics coincide, ratio 1, formula 1
  int n = 40;
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  auto full = small_alpha_adversary(n, all, 1.0);
  CHECK(full.ratio == doctest::Approx(1.0));
  CHECK(full.formula == doctest::Approx(1.0));

  // eps = 0.5 at n=1000: within 1% of 2.0
  n = 1000;
  long long want = static_cast<long long>(0.5 * n * (n - 1) / 2);
  std::vector<std::pair<int, int>> half;
  for (int i = 0; i < n && static_cast<long long>(half.size()) < want; ++i)
    for (int j = i + 1; j < n && static_cast<long long>(half.size()) < want; ++j)
      half.push_back({i, j});
  auto res = small_alpha_adversary(n, half, 0.5);
  CHECK(res.formula == doctest::Approx(2.0));
  CHECK(std::abs(res.ratio - res.formula) / res.formula < 0.01);
  CHECK(is_metric(res.upper));
  CHECK(is_metric(res.lower));

  // eps -> 0 limit of the formula
  CHECK(small_alpha_adversary(10, {}, 0.001).formula == doctest::Approx(4.0).epsilon(0.01));
}
