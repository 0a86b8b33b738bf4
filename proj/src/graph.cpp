#include "avgdist/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>

#include "avgdist/util.hpp"

namespace avgdist {

bool RegularGraph::rotation_is_involution() const {
  for (int v = 0; v < n; ++v)
    for (int p = 0; p < d; ++p) {
      const Dart& t = at(v, p);
      if (t.v < 0 || t.v >= n || t.port < 0 || t.port >= d) return false;
      const Dart& back = at(t.v, t.port);
      if (back.v != v || back.port != p) return false;
    }
  return true;
}

void RegularGraph::check_valid() const {
  if (!rotation_is_involution()) throw internal_error("rotation map is not an involution");
}

WeightedGraph RegularGraph::to_weighted(double w) const {
  WeightedGraph g;
  g.n = n;
  for (int v = 0; v < n; ++v)
    for (int p = 0; p < d; ++p) {
      const Dart& t = at(v, p);
      bool primary = (t.v > v) || (t.v == v && t.port >= p);
      if (primary) g.edges.push_back({v, t.v, w});
    }
  return g;
}

bool RegularGraph::connected() const {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int p = 0; p < d; ++p) {
      int u = at(v, p).v;
      if (!seen[u]) {
        seen[u] = 1;
        ++cnt;
        q.push(u);
      }
    }
  }
  return cnt == n;
}

RegularGraph regular_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> deg(n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw validation_error("edge index out of range");
    deg[u] += 1;
    if (v != u) deg[v] += 1;
  }
  int d = n > 0 ? deg[0] : 0;
  for (int v = 0; v < n; ++v)
    if (deg[v] != d) throw validation_error("graph is not regular");
  RegularGraph g(n, d);
  std::vector<int> next(n, 0);
  for (auto [u, v] : edges) {
    if (u == v) {
      int p = next[u]++;
      g.at(u, p) = {u, p};  // loop: fixed point, one port
    } else {
      int pu = next[u]++, pv = next[v]++;
      g.at(u, pu) = {v, pv};
      g.at(v, pv) = {u, pu};
    }
  }
  g.check_valid();
  return g;
}

RegularGraph read_regular_graph(const std::string& path) {
  WeightedGraph wg = read_graph_file(path);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(wg.edges.size());
  for (const auto& e : wg.edges) edges.push_back({e.u, e.v});
  return regular_from_edges(wg.n, edges);
}

void write_regular_graph(const std::string& path, const RegularGraph& g) {
  write_graph_file(path, g.to_weighted());
}

RegularGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return regular_from_edges(n, edges);
}

RegularGraph complete_graph_with_loops(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    edges.push_back({u, u});
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return regular_from_edges(n, edges);
}

RegularGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return regular_from_edges(n, edges);
}

RegularGraph random_regular(int n, int d, uint64_t seed, int max_attempts) {
  if (d >= n) throw validation_error("random_regular: d must be < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw validation_error("random_regular: n*d must be even");
  Rng rng(seed);
  std::vector<int> darts(static_cast<size_t>(n) * d);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::iota(darts.begin(), darts.end(), 0);
    for (size_t i = darts.size(); i > 1; --i) std::swap(darts[i - 1], darts[rng.below(i)]);
    bool ok = true;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(darts.size() / 2);
    std::map<std::pair<int, int>, int> seen;
    for (size_t i = 0; i + 1 < darts.size(); i += 2) {
      int u = darts[i] / d, v = darts[i + 1] / d;
      if (u == v) {
        ok = false;
        break;
      }
      auto key = std::minmax(u, v);
      if (seen[{key.first, key.second}]++) {
        ok = false;
        break;
      }
      edges.push_back({u, v});
    }
    if (ok) return regular_from_edges(n, edges);
  }
  throw validation_error("random_regular: rejection budget exhausted");
}

namespace {

// adjacency lists with loop/parallel detection, loops counted separately
struct SimpleView {
  int n;
  std::vector<std::vector<int>> adj;  // without loops, with parallel repeats
  bool has_loop = false;
  bool has_parallel = false;
};

SimpleView simple_view(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleView s;
  s.n = n;
  s.adj.resize(n);
  std::map<std::pair<int, int>, int> count;
  for (auto [u, v] : edges) {
    if (u == v) {
      s.has_loop = true;
      continue;
    }
    auto key = std::minmax(u, v);
    if (count[{key.first, key.second}]++) s.has_parallel = true;
    s.adj[u].push_back(v);
    s.adj[v].push_back(u);
  }
  return s;
}

int simple_girth(const SimpleView& s) {
  // BFS from every vertex; a non-tree edge closing at depth sum k gives a
  // cycle of length dist[u]+dist[v]+1 through the root.
  int best = kGirthInfinity;
  std::vector<int> dist(s.n), parent(s.n);
  for (int root = 0; root < s.n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    q.push(root);
    dist[root] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : s.adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (v != parent[u]) {
          int len = dist[u] + dist[v] + 1;
          if (best == kGirthInfinity || len < best) best = len;
        }
      }
    }
  }
  return best;
}

}  // namespace

int girth_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleView s = simple_view(n, edges);
  if (s.has_loop) return 1;
  if (s.has_parallel) return 2;
  return simple_girth(s);
}

int girth(const RegularGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.to_weighted().edges) edges.push_back({e.u, e.v});
  return girth_edges(g.n, edges);
}

int diameter(const RegularGraph& g) {
  if (!g.connected()) throw validation_error("disconnected");
  int best = 0;
  std::vector<int> dist(g.n);
  for (int root = 0; root < g.n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(root);
    dist[root] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int p = 0; p < g.d; ++p) {
        int v = g.at(u, p).v;
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

namespace {

double cut_value(const RegularGraph& g, const std::vector<char>& in_s, long long size_s) {
  long long crossing_darts = 0;
  for (int v = 0; v < g.n; ++v)
    for (int p = 0; p < g.d; ++p)
      if (in_s[v] != in_s[g.at(v, p).v]) ++crossing_darts;
  double cut_edges = crossing_darts / 2.0;
  double s = static_cast<double>(size_s);
  return g.n * cut_edges / (g.d * s * (g.n - s));
}

}  // namespace

ConductanceResult conductance(const RegularGraph& g, int exact_threshold) {
  if (!g.connected()) throw validation_error("disconnected");
  const int n = g.n;
  ConductanceResult res{kInf, true, {}};
  if (n <= exact_threshold) {
    // Gray-code enumeration over subsets containing vertex 0; incremental
    // crossing count, O(d) per step.
    std::vector<char> in_s(n, 0);
    in_s[0] = 1;
    long long size_s = 1;
    long long crossing = 0;
    for (int p = 0; p < g.d; ++p)
      if (g.at(0, p).v != 0) ++crossing;
    double best = cut_value(g, in_s, size_s);
    std::vector<char> best_s = in_s;
    uint64_t limit = 1ULL << (n - 1);
    uint64_t prev_gray = 0;
    for (uint64_t i = 1; i < limit; ++i) {
      uint64_t gray = i ^ (i >> 1);
      int flip = 1 + __builtin_ctzll(gray ^ prev_gray);
      prev_gray = gray;
      // flip vertex `flip`
      for (int p = 0; p < g.d; ++p) {
        int u = g.at(flip, p).v;
        if (u == flip) continue;
        crossing += (in_s[u] != in_s[flip]) ? -1 : 1;
      }
      in_s[flip] ^= 1;
      size_s += in_s[flip] ? 1 : -1;
      if (size_s == 0 || size_s == n) continue;
      double s = static_cast<double>(size_s);
      double val = n * (crossing / 2.0) / (g.d * s * (n - s));
      if (val < best) {
        best = val;
        best_s = in_s;
      }
    }
    res.value = best;
    res.exact = true;
    for (int v = 0; v < n; ++v)
      if (best_s[v]) res.witness.push_back(v);
    return res;
  }

  // search upper bound: Fiedler sweep cut plus single-vertex moves
  std::vector<double> A = normalized_adjacency(g);
  Eigen::Map<Eigen::MatrixXd> M(A.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  Eigen::VectorXd f = es.eigenvectors().col(n - 2);  // second-largest eigenvalue
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
  std::vector<char> in_s(n, 0);
  double best = kInf;
  std::vector<char> best_s;
  long long size_s = 0;
  for (int i = 0; i + 1 < n; ++i) {
    in_s[order[i]] = 1;
    ++size_s;
    double val = cut_value(g, in_s, size_s);
    if (val < best) {
      best = val;
      best_s = in_s;
    }
  }
  // local improvement
  in_s = best_s;
  size_s = std::count(in_s.begin(), in_s.end(), char(1));
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v = 0; v < n; ++v) {
      in_s[v] ^= 1;
      long long ns = size_s + (in_s[v] ? 1 : -1);
      if (ns > 0 && ns < n) {
        double val = cut_value(g, in_s, ns);
        if (val < best - 1e-15) {
          best = val;
          size_s = ns;
          best_s = in_s;
          improved = true;
          continue;
        }
      }
      in_s[v] ^= 1;
    }
  }
  res.value = best;
  res.exact = false;
  for (int v = 0; v < n; ++v)
    if (best_s[v]) res.witness.push_back(v);
  return res;
}

std::vector<double> normalized_adjacency(const RegularGraph& g) {
  std::vector<double> A(static_cast<size_t>(g.n) * g.n, 0.0);
  double inv_d = 1.0 / g.d;
  for (int v = 0; v < g.n; ++v)
    for (int p = 0; p < g.d; ++p) A[static_cast<size_t>(v) * g.n + g.at(v, p).v] += inv_d;
  return A;
}

namespace {

// matvec through the rotation map, y = A x
void apply_adjacency(const RegularGraph& g, const std::vector<double>& x,
                     std::vector<double>& y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (int v = 0; v < g.n; ++v) {
    double acc = 0.0;
    for (int p = 0; p < g.d; ++p) acc += x[g.at(v, p).v];
    y[v] = acc / g.d;
  }
}

// largest eigenvalue of P(A) restricted to 1^perp, by power iteration;
// shift selects lambda2 (A+I)/2 or -lambda_n (I-A)/2
double power_extreme(const RegularGraph& g, bool top, uint64_t seed) {
  const int n = g.n;
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (int v = 0; v < n; ++v) x[v] = rng.real() - 0.5;
  auto deflate = [&](std::vector<double>& z) {
    double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    for (double& t : z) t -= mean;
  };
  deflate(x);
  double lambda = 0.0;
  for (int it = 0; it < 4000; ++it) {
    apply_adjacency(g, x, y);
    for (int v = 0; v < n; ++v) y[v] = top ? 0.5 * (y[v] + x[v]) : 0.5 * (x[v] - y[v]);
    deflate(y);
    double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
    if (norm < 1e-300) return top ? -1.0 : 1.0;  // no component: extreme value
    for (double& t : y) t /= norm;
    double next = 0.0;
    apply_adjacency(g, y, x);
    for (int v = 0; v < n; ++v) {
      double shifted = top ? 0.5 * (x[v] + y[v]) : 0.5 * (y[v] - x[v]);
      next += shifted * y[v];
    }
    x = y;
    if (it > 32 && std::abs(next - lambda) < 1e-13) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // undo the shift
  return top ? 2.0 * lambda - 1.0 : 1.0 - 2.0 * lambda;
}

}  // namespace

SpectrumResult normalized_spectrum(const RegularGraph& g) {
  if (!g.connected()) throw validation_error("disconnected");
  const int n = g.n;
  double l2, ln;
  if (n <= 2000) {
    std::vector<double> A = normalized_adjacency(g);
    Eigen::Map<Eigen::MatrixXd> M(A.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();  // ascending
    ln = ev[0];
    l2 = n >= 2 ? ev[n - 2] : ev[0];
  } else {
    l2 = power_extreme(g, true, 12345);
    ln = power_extreme(g, false, 54321);
  }
  SpectrumResult r;
  r.lambda2 = l2;
  r.lambda_n = ln;
  r.gamma2 = 1.0 / (1.0 - l2);
  double lam = std::max(l2, -ln);
  r.bipartite_flag = ln <= -1.0 + 1e-12;
  r.gamma2_plus = lam >= 1.0 - 1e-13 ? kInf : 1.0 / (1.0 - lam);
  return r;
}

}  // namespace avgdist
