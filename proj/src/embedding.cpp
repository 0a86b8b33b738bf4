#include "avgdist/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace avgdist {

SubdividedComplex subdivide(const WeightedGraph& g, int r) {
  if (r < 1) throw validation_error("subdivide: r must be >= 1");
  SubdividedComplex sc;
  sc.base = g;
  sc.resolution = r;
  WeightedGraph fine;
  fine.n = g.n;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    double seg = edge.w / r;
    int prev = edge.u;
    for (int j = 1; j < r; ++j) {
      int id = fine.n++;
      sc.interior.push_back({static_cast<int>(e), j});
      fine.edges.push_back({prev, id, seg});
      prev = id;
    }
    fine.edges.push_back({prev, edge.v, seg});
  }
  sc.metric = shortest_path_metric(fine);
  return sc;
}

namespace {

// integer all-pairs shortest paths over a small complete weighted graph
std::vector<long long> integer_apsp(int n, const std::vector<long long>& w) {
  std::vector<long long> d = w;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

}  // namespace

ThreeRegularEmbedding metric_to_3regular(const FiniteMetric& m, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw validation_error("metric_to_3regular: eps in (0,1)");
  const int n0 = m.n;
  FiniteMetric M = m;
  bool padded = false;
  while (M.n < 3) {
    // duplicate point 0 at offset delta (flagged)
    padded = true;
    double delta = M.n >= 2 ? M.min_positive_distance() : 1.0;
    if (delta == 0.0) delta = 1.0;
    FiniteMetric bigger(M.n + 1);
    for (int i = 0; i < M.n; ++i)
      for (int j = 0; j < M.n; ++j) bigger.at(i, j) = M(i, j);
    for (int i = 0; i < M.n; ++i) bigger.set(i, M.n, M(i, 0) + delta);
    M = bigger;
  }
  const int n = M.n;
  double delta = M.min_positive_distance();
  if (delta == 0.0) throw validation_error("metric_to_3regular: all points coincide");

  // integerize: wbar = ceil(3 d / (eps delta)), then its path metric
  std::vector<long long> wbar(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) wbar[static_cast<size_t>(i) * n + j] =
          static_cast<long long>(std::ceil(3.0 * M(i, j) / (eps * delta)));
  std::vector<long long> what = integer_apsp(n, wbar);

  long long scale = static_cast<long long>(std::ceil(3.0 * n / eps));
  long long total_len = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) total_len += what[static_cast<size_t>(i) * n + j] * scale;
  if (2 * total_len > kEmbeddingSizeCap)
    throw validation_error("metric_to_3regular: output would need " +
                           std::to_string(2 * total_len) + " vertices, beyond the cap");

  // unit-length subdivision of the complete graph with weights what*scale,
  // with X-vertices replaced by cycles of their n-1 ports when n-1 > 3
  struct Builder {
    std::vector<std::pair<int, int>> edges;
    int next = 0;
    int add_vertex() { return next++; }
    void add_edge(int a, int b) { edges.push_back({a, b}); }
  } b;

  bool cycles = (n - 1) > 3;
  std::vector<std::vector<int>> port(n);  // per X-vertex: its port vertices
  std::vector<int> anchor(n);
  for (int x = 0; x < n; ++x) {
    if (cycles) {
      for (int t = 0; t < n - 1; ++t) port[x].push_back(b.add_vertex());
      for (int t = 0; t < n - 1; ++t) b.add_edge(port[x][t], port[x][(t + 1) % (n - 1)]);
      anchor[x] = port[x][0];
    } else {
      int v = b.add_vertex();
      port[x].assign(n - 1, v);
      anchor[x] = v;
    }
  }
  auto port_of = [&](int x, int other) {
    // lexicographic port order: ports of x indexed by the other endpoint
    return port[x][other < x ? other : other - 1];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long len = what[static_cast<size_t>(i) * n + j] * scale;
      int prev = port_of(i, j);
      for (long long t = 1; t < len; ++t) {
        int mid = b.add_vertex();
        b.add_edge(prev, mid);
        prev = mid;
      }
      b.add_edge(prev, port_of(j, i));
    }

  // mirror with a tagged copy; cross-link every degree-2 vertex
  int half = b.next;
  std::vector<int> deg(half, 0);
  for (auto [u, v] : b.edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::pair<int, int>> all_edges = b.edges;
  for (auto [u, v] : b.edges) all_edges.push_back({u + half, v + half});
  for (int v = 0; v < half; ++v)
    if (deg[v] == 2) all_edges.push_back({v, v + half});

  ThreeRegularEmbedding res;
  res.padded = padded;
  res.graph = regular_from_edges(2 * half, all_edges);
  res.map.resize(n0);
  for (int x = 0; x < n0; ++x) res.map[x] = anchor[x];

  // measured distortion on the original points, BFS oracle on the output
  std::vector<double> target(static_cast<size_t>(n0) * n0, 0.0);
  std::vector<int> dist(2 * half);
  for (int s = 0; s < n0; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(anchor[s]);
    dist[anchor[s]] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int p = 0; p < 3; ++p) {
        int v = res.graph.at(u, p).v;
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    for (int t = 0; t < n0; ++t) target[static_cast<size_t>(s) * n0 + t] = dist[anchor[t]];
  }
  FiniteMetric src(n0);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n0; ++j) src.at(i, j) = m(i, j);
  res.distortion = distortion_pairwise(src, target).distortion;
  return res;
}

RegularGraph extend_to_dregular(const RegularGraph& g, int d) {
  if (g.d != 3) throw validation_error("extend_to_dregular: input must be 3-regular");
  if (d < 4) throw validation_error("extend_to_dregular: d must be >= 4");
  {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.to_weighted().edges) {
      if (e.u == e.v) throw validation_error("extend_to_dregular: input must be simple");
      auto key = std::minmax(e.u, e.v);
      if (!seen.insert({key.first, key.second}).second)
        throw validation_error("extend_to_dregular: input must be simple");
    }
  }
  const int copies = d - 2;
  WeightedGraph base = g.to_weighted();
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < copies; ++c)
    for (const auto& e : base.edges) edges.push_back({e.u + c * g.n, e.v + c * g.n});
  for (int v = 0; v < g.n; ++v)
    for (int a = 0; a < copies; ++a)
      for (int bcopy = a + 1; bcopy < copies; ++bcopy)
        edges.push_back({v + a * g.n, v + bcopy * g.n});
  return regular_from_edges(copies * g.n, edges);
}

double outer_extension_optimal_alpha(double L) {
  return std::sqrt(std::sqrt(2.0) * L / (L + 1.0));
}

OuterExtension outer_extension(const WeightedGraph& g, const std::vector<int>& W,
                               const std::vector<std::vector<double>>& phi, double alpha,
                               const SubdividedComplex& complex,
                               const std::vector<int>& sample_rows, long long max_pairs) {
  if (W.size() != phi.size()) throw validation_error("outer_extension: |phi| != |W|");
  if (alpha < 0.0) throw validation_error("outer_extension: alpha must be >= 0");
  FiniteMetric dG = shortest_path_metric(g);
  std::vector<int> w_pos(g.n, -1);
  for (size_t i = 0; i < W.size(); ++i) w_pos[W[i]] = static_cast<int>(i);
  const size_t dim = phi.empty() ? 0 : phi[0].size();
  auto euclid = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
    return std::sqrt(acc);
  };

  // certify 1 <= ||phi(x)-phi(y)|| / d_G(x,y) <= L
  double L = 1.0;
  for (size_t i = 0; i < W.size(); ++i)
    for (size_t j = i + 1; j < W.size(); ++j) {
      double dgv = dG(W[i], W[j]);
      if (dgv == 0.0) continue;
      double r = euclid(phi[i], phi[j]) / dgv;
      if (r < 1.0 - 1e-9) throw validation_error("outer_extension: phi is contractive on W");
      L = std::max(L, r);
    }

  // edge ids within Sigma(W) for the tent block
  std::map<int, int> tent_index;  // base edge -> coordinate slot
  auto edge_in_W = [&](int e) {
    const auto& ed = complex.base.edges[e];
    return w_pos[ed.u] >= 0 && w_pos[ed.v] >= 0;
  };
  for (size_t e = 0; e < complex.base.edges.size(); ++e)
    if (edge_in_W(static_cast<int>(e))) tent_index[static_cast<int>(e)] = static_cast<int>(tent_index.size());

  double tent_w = alpha * (L + 1.0);
  OuterExtension out;
  out.L = L;
  out.degenerate = alpha == 0.0;
  out.coords.reserve(sample_rows.size());
  for (int row : sample_rows) {
    std::vector<double> c(dim + tent_index.size(), 0.0);
    if (row < complex.base.n) {
      int pos = w_pos[row];
      if (pos < 0) throw validation_error("outer_extension: sample vertex outside W");
      std::copy(phi[pos].begin(), phi[pos].end(), c.begin());
    } else {
      auto [e, j] = complex.interior[row - complex.base.n];
      if (!edge_in_W(e)) throw validation_error("outer_extension: sample outside Sigma(W)");
      const auto& ed = complex.base.edges[e];
      double du = complex.metric(row, complex.vertex_row(ed.u));
      double dv = complex.metric(row, complex.vertex_row(ed.v));
      double denom = dG(ed.u, ed.v);
      const auto& pu = phi[w_pos[ed.u]];
      const auto& pv = phi[w_pos[ed.v]];
      for (size_t t = 0; t < dim; ++t) c[t] = (dv * pu[t] + du * pv[t]) / denom;
      c[dim + tent_index[e]] = std::min(du, dv) * tent_w;
      (void)j;
    }
    out.coords.push_back(std::move(c));
  }

  // measured expansion/contraction over sample pairs
  double expansion = 0.0, contraction = kInf;
  long long pairs = 0;
  for (size_t i = 0; i < sample_rows.size() && pairs < max_pairs; ++i)
    for (size_t j = i + 1; j < sample_rows.size() && pairs < max_pairs; ++j, ++pairs) {
      double ds = complex.metric(sample_rows[i], sample_rows[j]);
      if (ds == 0.0) continue;
      double r = euclid(out.coords[i], out.coords[j]) / ds;
      expansion = std::max(expansion, r);
      contraction = std::min(contraction, r);
    }
  out.lipschitz_upper = expansion;
  out.contraction_lower = contraction;
  out.distortion = contraction > 0.0 ? expansion / contraction : kInf;
  return out;
}

}  // namespace avgdist
