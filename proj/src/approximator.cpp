#include "avgdist/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace avgdist {

QuerySet universal_query_set(const RegularGraph& expander, int n) {
  if (n > expander.n) throw validation_error("expander too small");
  if (n < 2) throw validation_error("universal_query_set: n must be >= 2");
  if (!expander.connected()) throw validation_error("universal_query_set: expander disconnected");
  QuerySet q;
  q.n = n;
  for (int v = 0; v < expander.n; ++v)
    for (int p = 0; p < expander.d; ++p) {
      const auto& t = expander.at(v, p);
      bool primary = (t.v > v) || (t.v == v && t.port >= p);
      if (!primary) continue;
      int a = v % n, b = t.v % n;
      if (a == b)
        ++q.collapsed;
      else
        q.pairs.push_back({a, b});
    }
  q.sigma = 1.0 / static_cast<double>(q.full_count());
  return q;
}

double estimate_average(const QuerySet& q, const DistanceOracle& oracle) {
  double acc = 0.0;
  for (auto [a, b] : q.pairs) acc += oracle(a, b);
  return q.sigma * acc;
}

SandwichReport sandwich_check(const QuerySet& q, const FiniteMetric& m,
                              const std::vector<int>& points) {
  SandwichReport r;
  double acc = 0.0;
  for (auto [a, b] : q.pairs) acc += m(points[a], points[b]);
  r.mean_over_pairs = acc / static_cast<double>(q.full_count());
  r.exact_average = average_distance(m, points);
  r.lower_ok = r.mean_over_pairs / 2.0 <= r.exact_average * (1.0 + 1e-9) + 1e-15;
  if (r.mean_over_pairs > 0.0)
    r.upper_ratio = r.exact_average / r.mean_over_pairs;
  else
    r.upper_ratio = r.exact_average == 0.0 ? 1.0 : kInf;
  return r;
}

double calibrate_sigma(QuerySet& q, const std::vector<FiniteMetric>& corpus,
                       const std::vector<std::vector<int>>& corpus_points) {
  double c = 0.0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    SandwichReport r = sandwich_check(q, corpus[i], corpus_points[i]);
    if (std::isfinite(r.upper_ratio)) c = std::max(c, r.upper_ratio);
  }
  if (c == 0.0) c = 1.0;
  q.sigma = c / static_cast<double>(q.full_count());
  return c;
}

Transcript run_game(const Strategy& strategy, const DistanceOracle& oracle, int n, int rounds) {
  Transcript t;
  std::map<std::pair<int, int>, double> seen;
  for (int i = 0; i < rounds; ++i) {
    auto pair = strategy.next(t);
    if (pair.first == pair.second || pair.first < 0 || pair.second < 0 || pair.first >= n ||
        pair.second >= n)
      throw validation_error("strategy emitted an out-of-range pair");
    auto key = std::minmax(pair.first, pair.second);
    auto it = seen.find({key.first, key.second});
    double resp;
    if (it != seen.end()) {
      resp = it->second;  // consistency: repeated pair keeps its response
    } else {
      resp = oracle(pair.first, pair.second);
      seen[{key.first, key.second}] = resp;
    }
    t.rounds.push_back({pair, resp});
  }
  t.estimate = strategy.estimate ? strategy.estimate(t) : 0.0;
  return t;
}

QuerySet sample_baseline(int n, int m, uint64_t seed) {
  if (m < 1) throw validation_error("sample_baseline: m must be >= 1");
  QuerySet q;
  q.n = n;
  Rng rng(seed);
  for (int i = 0; i < m; ++i) {
    int a = rng.index(n);
    int b = rng.index(n - 1);
    if (b >= a) ++b;
    q.pairs.push_back({std::min(a, b), std::max(a, b)});
  }
  q.sigma = 1.0 / static_cast<double>(m);
  q.ordered_correction = static_cast<double>(n - 1) / n;
  return q;
}

}  // namespace avgdist
