#include "avgdist/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <numeric>
#include <set>

namespace avgdist {

AdversaryState::AdversaryState(int n, int k, double theta) : n_(n), k_(k), theta_(theta) {
  if (n < 2 || k < 1) throw validation_error("adversary: need n >= 2, k >= 1");
  if (!(theta > 0.0)) throw validation_error("adversary: theta must be positive");
  deg_.assign(n, 0);
  dist_.assign(static_cast<size_t>(n) * n, k + 1);
  for (int i = 0; i < n; ++i) dist_[static_cast<size_t>(i) * n + i] = 0;
  for (int h = 0; h < k; ++h)
    h_thresholds_.push_back(std::sqrt(theta) *
                            (std::pow(static_cast<double>(n), static_cast<double>(h) / k) - 1.0));
}

AdversaryState AdversaryState::from_budget(int n, int k, long long m) {
  double theta = static_cast<double>(m) /
                 std::pow(static_cast<double>(n), (k + 1.0) / k);
  return AdversaryState(n, k, theta);
}

int AdversaryState::h_value(int x) const {
  int h = 0;
  for (int c = k_ - 1; c >= 1; --c)
    if (deg_[x] >= h_thresholds_[c]) {
      h = c;
      break;
    }
  return h;
}

bool AdversaryState::queried(int x, int y) const {
  auto key = std::minmax(x, y);
  return weight_.count({key.first, key.second}) > 0;
}

std::optional<int> AdversaryState::stored_weight(int x, int y) const {
  auto key = std::minmax(x, y);
  auto it = weight_.find({key.first, key.second});
  if (it == weight_.end()) return std::nullopt;
  return it->second;
}

int AdversaryState::answer_query(int x, int y) {
  if (x == y) throw validation_error("adversary: query must have distinct endpoints");
  if (x < 0 || y < 0 || x >= n_ || y >= n_) throw validation_error("adversary: index out of range");
  if (auto w = stored_weight(x, y)) return *w;

  int h = std::max(h_value(x), h_value(y));
  int first = std::min(h + 1, dist(x, y));
  // stretch constraints from earlier answers; only weights >= 2 can bind
  int second = std::numeric_limits<int>::min();
  for (const auto& [uv, w] : edges_) {
    if (w < 2) continue;
    auto [u, v] = uv;
    second = std::max(second, w - dist(u, x) - dist(v, y));
    second = std::max(second, w - dist(v, x) - dist(u, y));
  }
  int w = std::max(first, second);
  if (w < 1 || w > k_) throw internal_error("adversary: answer outside [k]");
  insert_edge(x, y, w);
  if (dist(x, y) != w) throw internal_error("adversary: metric/weight consistency broken");
  return w;
}

void AdversaryState::insert_edge(int x, int y, int w) {
  auto key = std::minmax(x, y);
  edges_.push_back({{key.first, key.second}, w});
  weight_[{key.first, key.second}] = w;
  ++deg_[x];
  ++deg_[y];
  if (w >= dist(x, y)) return;
  // capped incremental all-pairs update; only vertices within k-w of an
  // endpoint can improve
  std::vector<int> near_x, near_y;
  for (int a = 0; a < n_; ++a) {
    if (dist(a, x) + w <= k_) near_x.push_back(a);
    if (dist(y, a) + w <= k_) near_y.push_back(a);
  }
  for (int a : near_x) {
    int da = dist(a, x) + w;
    auto* row = &dist_[static_cast<size_t>(a) * n_];
    for (int b : near_y) {
      int cand = da + dist(y, b);
      if (cand < row[b]) {
        row[b] = cand;
        dist_[static_cast<size_t>(b) * n_ + a] = cand;
      }
    }
  }
}

FiniteMetric AdversaryState::finalize_upper() const {
  FiniteMetric m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = dist(i, j);
  return m;
}

// ---------------------------------------------------------------------------
// lower metric: LP fixpoint in half-integer arithmetic (values stored *2)

namespace {

struct LowerSolver {
  const AdversaryState& st;
  int n, k;
  std::vector<int> h;
  std::vector<int> d2, lb2, ub2;  // *2 representation
  std::vector<char> is_edge;
  std::deque<std::pair<int, int>> queue;
  std::vector<char> in_queue;
  long long raises = 0;

  explicit LowerSolver(const AdversaryState& s) : st(s), n(s.n()), k(s.k()) {
    h.resize(n);
    for (int x = 0; x < n; ++x) h[x] = s.h_value(x);
    size_t nn = static_cast<size_t>(n) * n;
    d2.assign(nn, 0);
    lb2.assign(nn, 0);
    ub2.assign(nn, 0);
    is_edge.assign(nn, 0);
    in_queue.assign(nn, 0);
    for (const auto& [uv, w] : s.edges()) {
      is_edge[idx(uv.first, uv.second)] = is_edge[idx(uv.second, uv.first)] = 1;
      (void)w;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        int ub = 2 * s.dist(x, y);
        ub2[idx(x, y)] = ub;
        if (is_edge[idx(x, y)]) {
          lb2[idx(x, y)] = ub;  // boundary condition d = w (= capped distance on E)
        } else {
          lb2[idx(x, y)] = std::min(ub, 2 * std::max(h[x], h[y]) + 1);
        }
        d2[idx(x, y)] = lb2[idx(x, y)];
      }
  }

  size_t idx(int x, int y) const { return static_cast<size_t>(x) * n + y; }
  int val(int x, int y) const { return d2[idx(x, y)]; }

  void set_val(int x, int y, int v) {
    d2[idx(x, y)] = v;
    d2[idx(y, x)] = v;
  }

  void push(int x, int y) {
    auto key = std::minmax(x, y);
    if (!in_queue[idx(key.first, key.second)]) {
      in_queue[idx(key.first, key.second)] = 1;
      queue.push_back({key.first, key.second});
    }
  }

  // raise pair to at least `demand`, clamped at its upper bound
  void raise(int x, int y, int demand) {
    int nv = std::min(demand, ub2[idx(x, y)]);
    if (nv > val(x, y)) {
      set_val(x, y, nv);
      push(x, y);
      ++raises;
      if (raises > 4LL * static_cast<long long>(n) * n * (k + 1))
        throw internal_error("lower metric: fixpoint iteration did not converge");
    }
  }

  void repair(int x, int y, int z) {
    // triangle with long side (x,y): d(x,z) + d(z,y) >= d(x,y)
    int v = val(x, y);
    bool fa = is_edge[idx(x, z)], fb = is_edge[idx(z, y)];
    if (fa && fb) throw internal_error("lower metric: contradictory fixed triangle");
    auto side = [&](int a, int b, int other_val) { raise(a, b, v - other_val); };
    if (fa) {
      side(z, y, val(x, z));
    } else if (fb) {
      side(x, z, val(z, y));
    } else {
      // deterministic choice: lexicographically smaller pair first
      auto pa = std::minmax(x, z), pb = std::minmax(z, y);
      if (pa < pb)
        side(x, z, val(z, y));
      else
        side(z, y, val(x, z));
    }
    if (val(x, z) + val(z, y) < v) {
      // clamped; the other side must absorb the rest (feasible since the
      // upper metric satisfies this triangle)
      if (!fa) side(x, z, val(z, y));
      if (val(x, z) + val(z, y) < v && !fb) side(z, y, val(x, z));
      if (val(x, z) + val(z, y) < v)
        throw internal_error("lower metric: triangle not repairable");
    }
  }

  void scan(int x, int y) {
    int v = val(x, y);
    if (v <= 2) return;  // sides are >= 1/2 each
    for (int z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      if (val(x, z) + val(z, y) < val(x, y)) repair(x, y, z);
    }
  }

  void solve() {
    for (const auto& [uv, w] : st.edges())
      if (w >= 2) push(uv.first, uv.second);
    if (k >= 3) {
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          if (!is_edge[idx(x, y)] && lb2[idx(x, y)] >= 3) push(x, y);
    }
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      in_queue[idx(x, y)] = 0;
      scan(x, y);
    }
  }

  bool verify() const {
    // bounds and edge agreement
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        int v = d2[idx(x, y)];
        if (v < lb2[idx(x, y)] || v > ub2[idx(x, y)]) return false;
      }
    // triangle inequalities: a violating z must be within v-2 of both sides
    std::vector<std::vector<std::pair<int, int>>> small(n);  // (val2, z), val2 <= 2k
    for (int x = 0; x < n; ++x) {
      for (int z = 0; z < n; ++z)
        if (z != x && d2[idx(x, z)] <= 2 * k) small[x].push_back({d2[idx(x, z)], z});
      std::sort(small[x].begin(), small[x].end());
    }
    auto candidates = [&](int vertex, int limit) {
      const auto& s = small[vertex];
      return std::upper_bound(s.begin(), s.end(), std::make_pair(limit, n)) - s.begin();
    };
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        int v = d2[idx(x, y)];
        if (v <= 2) continue;
        // a violating z is within v-2 of both endpoints; scan the sparser side
        bool from_x = candidates(x, v - 2) <= candidates(y, v - 2);
        const auto& side = from_x ? small[x] : small[y];
        int anchor = from_x ? y : x;
        for (const auto& [a, z] : side) {
          if (a > v - 2) break;
          if (z == x || z == y) continue;
          if (a + d2[idx(anchor, z)] < v) return false;
        }
      }
    return true;
  }

  // total over unordered pairs in the half-integer (*2) representation
  long long objective2() const {
    long long acc = 0;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) acc += d2[idx(x, y)];
    return acc;
  }

  FiniteMetric metric() const {
    FiniteMetric m(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) m.at(x, y) = x == y ? 0.0 : d2[idx(x, y)] / 2.0;
    return m;
  }
};

// exact half-integral optimum by depth-first branch and bound (n <= 8)
struct ExactLower {
  int n;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> lb, ub;
  std::vector<char> fixed;
  std::vector<int> value;
  std::vector<long long> suffix_lb;
  std::vector<int> pair_index;  // n*n -> pair position
  long long best = std::numeric_limits<long long>::max();
  std::vector<int> best_value;
  long long nodes = 0;

  ExactLower(const LowerSolver& s) : n(s.n) {
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) pairs.push_back({x, y});
    pair_index.assign(static_cast<size_t>(n) * n, -1);
    for (size_t t = 0; t < pairs.size(); ++t) {
      auto [x, y] = pairs[t];
      pair_index[static_cast<size_t>(x) * n + y] = static_cast<int>(t);
      pair_index[static_cast<size_t>(y) * n + x] = static_cast<int>(t);
    }
    for (auto [x, y] : pairs) {
      lb.push_back(s.lb2[s.idx(x, y)]);
      ub.push_back(s.ub2[s.idx(x, y)]);
      fixed.push_back(s.is_edge[s.idx(x, y)]);
    }
    value.assign(pairs.size(), 0);
    suffix_lb.assign(pairs.size() + 1, 0);
    for (int t = static_cast<int>(pairs.size()) - 1; t >= 0; --t)
      suffix_lb[t] = suffix_lb[t + 1] + lb[t];
  }

  void dfs(size_t t, long long acc) {
    if (++nodes > 50000000LL) throw internal_error("exact lower metric: search budget exceeded");
    if (acc + suffix_lb[t] >= best) return;
    if (t == pairs.size()) {
      best = acc;
      best_value = value;
      return;
    }
    auto [x, y] = pairs[t];
    int lo = lb[t], hi = ub[t];
    for (int z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      int a = pair_index[static_cast<size_t>(x) * n + z];
      int b = pair_index[static_cast<size_t>(y) * n + z];
      if (a < static_cast<int>(t) && b < static_cast<int>(t)) {
        lo = std::max(lo, std::abs(value[a] - value[b]));
        hi = std::min(hi, value[a] + value[b]);
      }
    }
    if (fixed[t]) {
      int v = lb[t];  // edges have lb = ub = 2w
      if (v < lo || v > hi) return;
      value[t] = v;
      dfs(t + 1, acc + v);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      value[t] = v;
      dfs(t + 1, acc + v);
    }
  }
};

}  // namespace

AdversaryState::LowerResult AdversaryState::finalize_lower(int exact_threshold) const {
  LowerSolver solver(*this);
  solver.solve();
  LowerResult res;
  res.feasible = solver.verify();
  if (!res.feasible) throw internal_error("lower metric: fixpoint not feasible");
  long long fix2 = solver.objective2();
  res.objective = fix2 / 2.0;
  res.metric = solver.metric();
  res.exact = false;
  if (n_ <= exact_threshold) {
    ExactLower exact(solver);
    exact.best = fix2 + 1;  // fixpoint plus one step as the starting incumbent
    exact.dfs(0, 0);
    res.exact = true;
    res.exact_objective = exact.best / 2.0;
  }
  return res;
}

namespace {

int lower_structure_violations(const AdversaryState& st, const FiniteMetric& lower) {
  const int n = st.n();
  std::vector<int> h(n);
  for (int x = 0; x < n; ++x) h[x] = st.h_value(x);
  std::vector<char> inU(n, 0);
  for (int z = 0; z < n; ++z) {
    if (h[z] < 1) continue;
    for (int x = 0; x < n; ++x)
      if (lower(z, x) <= h[z] - 1 + 1e-12) inU[x] = 1;
  }
  std::vector<char> marked(static_cast<size_t>(n) * n, 0);
  for (const auto& [uv, w] : st.edges()) {
    for (auto [u, v] : {uv, std::make_pair(uv.second, uv.first)}) {
      if (w != h[u] + 1) continue;
      for (int x = 0; x < n; ++x)
        if (lower(u, x) <= h[u] + 1e-12) {
          marked[static_cast<size_t>(x) * n + v] = 1;
          marked[static_cast<size_t>(v) * n + x] = 1;
        }
    }
  }
  int violations = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || inU[x] || inU[y]) continue;
      if (marked[static_cast<size_t>(x) * n + y]) continue;
      if (st.queried(x, y)) continue;
      if (std::abs(lower(x, y) - 0.5) > 1e-12) ++violations;
    }
  return violations;
}

}  // namespace

SeparationReport separation_report(const AdversaryState& state, const FiniteMetric& upper,
                                   const AdversaryState::LowerResult& lower) {
  const int n = state.n();
  const int k = state.k();
  SeparationReport rep;
  rep.avg_upper = average_distance(upper);
  rep.avg_lower = average_distance(lower.metric);
  rep.ratio = rep.avg_lower > 0 ? rep.avg_upper / rep.avg_lower : kInf;
  long long at_cap = 0, at_half = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (upper(x, y) == k + 1) ++at_cap;
      if (std::abs(lower.metric(x, y) - 0.5) < 1e-12) ++at_half;
    }
  double nn = static_cast<double>(n) * n;
  rep.fraction_upper_at_k_plus_1 = at_cap / nn;
  rep.fraction_lower_at_half = at_half / nn;
  rep.agreement_on_E = true;
  for (const auto& [uv, w] : state.edges()) {
    if (upper(uv.first, uv.second) != w ||
        std::abs(lower.metric(uv.first, uv.second) - w) > 1e-12)
      rep.agreement_on_E = false;
  }
  rep.lower_feasible = lower.feasible;
  rep.lower_structure_violations = lower_structure_violations(state, lower.metric);
  return rep;
}

SeparationReport verify_separation(const AdversaryState& state) {
  FiniteMetric upper = state.finalize_upper();
  auto lower = state.finalize_lower();
  return separation_report(state, upper, lower);
}

double power_p_report(const FiniteMetric& upper, const FiniteMetric& lower, double p) {
  double up = 0.0, lo = 0.0;
  for (double v : upper.d) up += std::pow(v, p);
  for (double v : lower.d) lo += std::pow(v, p);
  if (lo == 0.0) return kInf;
  return up / lo;
}

std::vector<BallGrowthRow> ball_growth_report(const AdversaryState& state, long long m) {
  const int n = state.n();
  const int k = state.k();
  std::vector<BallGrowthRow> rows;
  double highdeg = std::sqrt(static_cast<double>(m)) /
                   std::pow(static_cast<double>(n), (k + 1.0) / (2.0 * k)) * (n - 1);
  for (int r = 1; r <= k - 1; ++r) {
    int max_ball = 0;
    for (int x = 0; x < n; ++x) {
      if (state.degree(x) >= highdeg) continue;
      int cnt = 0;
      for (int y = 0; y < n; ++y)
        if (state.dist(x, y) <= r) ++cnt;
      max_ball = std::max(max_ball, cnt);
    }
    double bound = std::pow(2.0, k - 1) * std::sqrt(state.theta()) *
                   std::pow(static_cast<double>(n), static_cast<double>(r) / k);
    rows.push_back({r, max_ball, bound, bound > 0 ? max_ball / bound : kInf});
  }
  return rows;
}

NonadaptiveResult nonadaptive_adversary(int n, const std::vector<std::pair<int, int>>& E, int k,
                                        double theta) {
  double budget = theta * std::pow(static_cast<double>(n), (k + 1.0) / k);
  if (static_cast<double>(E.size()) > budget)
    throw validation_error("nonadaptive_adversary: |E| exceeds theta n^{(k+1)/k}");
  double eta = std::sqrt(theta) * std::pow(static_cast<double>(n), 1.0 / k);

  NonadaptiveResult res;
  std::vector<int> deg(n, 0);
  for (auto [u, v] : E) {
    if (u == v) throw validation_error("nonadaptive_adversary: self-query");
    ++deg[u];
    ++deg[v];
  }

  if (eta < 3.0) {
    // disconnected-metric fallback: two compatible metrics with unbounded ratio
    WeightedGraph g;
    g.n = n;
    for (auto [u, v] : E) g.edges.push_back({u, v, 1.0});
    double m_small = n * (k + 1.0);
    double m_big = std::pow(n * static_cast<double>(k), 10.0);
    FiniteMetric small = shortest_path_metric(g, m_small);
    FiniteMetric big = shortest_path_metric(g, m_big);
    bool disconnected = false;
    for (int i = 0; i < n && !disconnected; ++i)
      for (int j = 0; j < n; ++j)
        if (big(i, j) == m_big) {
          disconnected = true;
          break;
        }
    if (!disconnected)
      throw validation_error("nonadaptive_adversary: eta < 3 but query graph is connected");
    res.fallback = true;
    res.fallback_ratio = average_distance(big) / average_distance(small);
    res.upper = big;
    res.lower = small;
    res.report.avg_upper = average_distance(big);
    res.report.avg_lower = average_distance(small);
    res.report.ratio = res.fallback_ratio;
    res.report.agreement_on_E = true;
    return res;
  }

  std::vector<char> inS(n, 0);
  for (int v = 0; v < n; ++v) inS[v] = deg[v] >= eta;
  std::set<std::pair<int, int>> edge_set;
  WeightedGraph g;
  g.n = n;
  for (auto [u, v] : E) {
    double w = (!inS[u] && !inS[v]) ? 1.0 : k + 1.0;
    g.edges.push_back({u, v, w});
    auto key = std::minmax(u, v);
    edge_set.insert({key.first, key.second});
  }
  res.upper = shortest_path_metric(g, k + 1.0);
  res.lower = FiniteMetric(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      double v;
      if (inS[x] || inS[y])
        v = k + 1.0;
      else if (edge_set.count({x, y}))
        v = 1.0;
      else
        v = 0.5;
      res.lower.set(x, y, v);
    }

  SeparationReport& rep = res.report;
  rep.avg_upper = average_distance(res.upper);
  rep.avg_lower = average_distance(res.lower);
  rep.ratio = rep.avg_upper / rep.avg_lower;
  long long at_cap = 0, at_half = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (res.upper(x, y) == k + 1.0) ++at_cap;
      if (res.lower(x, y) == 0.5) ++at_half;
    }
  rep.fraction_upper_at_k_plus_1 = at_cap / (static_cast<double>(n) * n);
  rep.fraction_lower_at_half = at_half / (static_cast<double>(n) * n);
  rep.agreement_on_E = true;
  for (const auto& e : g.edges)
    if (res.upper(e.u, e.v) != e.w || res.lower(e.u, e.v) != e.w) rep.agreement_on_E = false;
  rep.lower_feasible = true;
  return res;
}

SmallAlphaResult small_alpha_adversary(int n, const std::vector<std::pair<int, int>>& E,
                                       double eps) {
  double cap = eps * n * (n - 1.0) / 2.0;
  if (static_cast<double>(E.size()) > cap + 1e-9)
    throw validation_error("small_alpha_adversary: |E| exceeds eps * C(n,2)");
  SmallAlphaResult res;
  res.upper = FiniteMetric(n);
  res.lower = FiniteMetric(n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      res.upper.set(x, y, 2.0);
      res.lower.set(x, y, 0.5);
    }
  for (auto [u, v] : E) {
    res.upper.set(u, v, 1.0);
    res.lower.set(u, v, 1.0);
  }
  double up = average_distance(res.upper), lo = average_distance(res.lower);
  res.ratio = lo > 0 ? up / lo : 1.0;
  res.formula = 4.0 * (1.0 - eps / 2.0) / (1.0 + eps);
  return res;
}

// ---------------------------------------------------------------------------
// built-in strategies

Strategy random_pairs_strategy(int n, uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  auto queried = std::make_shared<std::set<std::pair<int, int>>>();
  Strategy s;
  s.next = [n, rng, queried](const Transcript&) {
    for (int tries = 0; tries < 200; ++tries) {
      int a = rng->index(n);
      int b = rng->index(n - 1);
      if (b >= a) ++b;
      auto key = std::minmax(a, b);
      if (queried->insert({key.first, key.second}).second) return std::make_pair(a, b);
    }
    // dense fallback: first unqueried pair
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (queried->insert({a, b}).second) return std::make_pair(a, b);
    return std::make_pair(0, 1);
  };
  s.estimate = [](const Transcript& t) {
    double acc = 0.0;
    for (const auto& r : t.rounds) acc += r.second;
    return t.rounds.empty() ? 0.0 : acc / t.rounds.size();
  };
  return s;
}

Strategy greedy_low_degree_strategy(int n) {
  auto deg = std::make_shared<std::vector<int>>(n, 0);
  auto queried = std::make_shared<std::set<std::pair<int, int>>>();
  Strategy s;
  s.next = [n, deg, queried](const Transcript&) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::make_pair((*deg)[a], a) < std::make_pair((*deg)[b], b);
    });
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int a = order[i], b = order[j];
        auto key = std::minmax(a, b);
        if (!queried->count({key.first, key.second})) {
          queried->insert({key.first, key.second});
          ++(*deg)[a];
          ++(*deg)[b];
          return std::make_pair(a, b);
        }
      }
    return std::make_pair(0, 1);
  };
  s.estimate = [](const Transcript& t) {
    double acc = 0.0;
    for (const auto& r : t.rounds) acc += r.second;
    return t.rounds.empty() ? 0.0 : acc / t.rounds.size();
  };
  return s;
}

Strategy bfs_frontier_strategy(int n) {
  struct State {
    std::vector<int> visited;
    std::vector<char> seen;
    size_t center = 0;
    int fanout = 0;
    int next_unvisited = 1;
    int lex_a = 0, lex_b = 0;
    std::set<std::pair<int, int>> queried;
  };
  auto st = std::make_shared<State>();
  st->visited = {0};
  st->seen.assign(n, 0);
  st->seen[0] = 1;
  Strategy s;
  s.next = [n, st](const Transcript&) {
    while (st->next_unvisited < n && st->seen[st->next_unvisited]) ++st->next_unvisited;
    if (st->next_unvisited < n) {
      int c = st->visited[st->center];
      int u = st->next_unvisited;
      st->seen[u] = 1;
      st->visited.push_back(u);
      ++st->next_unvisited;
      if (++st->fanout >= 3) {  // branching factor of the frontier walk
        st->fanout = 0;
        st->center = (st->center + 1) % st->visited.size();
      }
      auto key = std::minmax(c, u);
      st->queried.insert({key.first, key.second});
      return std::make_pair(c, u);
    }
    // frontier exhausted: deterministic sweep over remaining pairs
    for (int a = st->lex_a; a < n; ++a) {
      for (int b = (a == st->lex_a ? st->lex_b : a + 1); b < n; ++b) {
        if (a == b) continue;
        if (!st->queried.count({std::min(a, b), std::max(a, b)})) {
          st->queried.insert({std::min(a, b), std::max(a, b)});
          st->lex_a = a;
          st->lex_b = b + 1;
          return std::make_pair(a, b);
        }
      }
    }
    return std::make_pair(0, 1);
  };
  s.estimate = [](const Transcript& t) {
    double acc = 0.0;
    for (const auto& r : t.rounds) acc += r.second;
    return t.rounds.empty() ? 0.0 : acc / t.rounds.size();
  };
  return s;
}

Strategy fixed_pairs_strategy(std::vector<std::pair<int, int>> pairs) {
  auto list = std::make_shared<std::vector<std::pair<int, int>>>(std::move(pairs));
  auto pos = std::make_shared<size_t>(0);
  Strategy s;
  s.next = [list, pos](const Transcript&) {
    if (*pos >= list->size()) throw validation_error("fixed strategy: out of pairs");
    return (*list)[(*pos)++];
  };
  s.estimate = [](const Transcript& t) {
    double acc = 0.0;
    for (const auto& r : t.rounds) acc += r.second;
    return t.rounds.empty() ? 0.0 : acc / t.rounds.size();
  };
  return s;
}

GameResult run_adversary_game(int n, int k, long long m, const Strategy& strategy) {
  GameResult res{AdversaryState::from_budget(n, k, m), {}};
  for (long long i = 0; i < m; ++i) {
    auto pair = strategy.next(res.transcript);
    int w = res.state.answer_query(pair.first, pair.second);
    res.transcript.rounds.push_back({pair, static_cast<double>(w)});
  }
  if (strategy.estimate) res.transcript.estimate = strategy.estimate(res.transcript);
  return res;
}

}  // namespace avgdist
