#include "avgdist/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace avgdist {

double FiniteMetric::max_distance() const {
  double m = 0.0;
  for (double v : d) m = std::max(m, v);
  return m;
}

double FiniteMetric::min_positive_distance() const {
  double m = kInf;
  for (double v : d)
    if (v > 0.0) m = std::min(m, v);
  return std::isfinite(m) ? m : 0.0;
}

std::vector<MetricViolation> validate_metric(const FiniteMetric& m) {
  std::vector<MetricViolation> out;
  const int n = m.n;
  for (int i = 0; i < n; ++i) {
    if (m(i, i) != 0.0) out.push_back({MetricViolation::Diagonal, i, i, -1, m(i, i), 0.0});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (m(i, j) < 0.0) out.push_back({MetricViolation::NegativeEntry, i, j, -1, m(i, j), 0.0});
      if (m(i, j) != m(j, i))
        out.push_back({MetricViolation::Symmetry, i, j, -1, m(i, j), m(j, i)});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        double lhs = m(i, k);
        double rhs = m(i, j) + m(j, k);
        if (lhs > rhs + kMetricRelTol * std::max(1.0, lhs))
          out.push_back({MetricViolation::Triangle, i, j, k, lhs, rhs});
      }
    }
  return out;
}

bool is_metric(const FiniteMetric& m) { return validate_metric(m).empty(); }

FiniteMetric shortest_path_metric(const WeightedGraph& g, std::optional<double> cap) {
  const int n = g.n;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : g.edges) {
    if (e.w < 0.0 || !std::isfinite(e.w)) throw validation_error("negative or non-finite edge weight");
    if (e.u == e.v) continue;  // self-loops never shorten paths
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  FiniteMetric m(n);
  std::vector<double> dist(n);
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        double nd = du + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (!std::isfinite(dist[t])) {
        if (!cap) throw validation_error("disconnected");
        m.at(s, t) = *cap;
      } else {
        m.at(s, t) = cap ? std::min(dist[t], *cap) : dist[t];
      }
    }
  }
  return m;
}

double average_distance(const FiniteMetric& m, const std::vector<int>& points) {
  if (points.empty()) throw validation_error("average_distance: empty point set");
  double sum = 0.0;
  for (int a : points)
    for (int b : points) sum += m(a, b);
  double k = static_cast<double>(points.size());
  return sum / (k * k);
}

double average_distance(const FiniteMetric& m) {
  double sum = 0.0;
  for (double v : m.d) sum += v;
  double n = static_cast<double>(m.n);
  return sum / (n * n);
}

DistortionResult distortion_pairwise(const FiniteMetric& src,
                                     const std::vector<double>& target_d) {
  const int n = src.n;
  double rmin = kInf, rmax = 0.0;
  bool any = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = src(i, j);
      double t = target_d[static_cast<size_t>(i) * n + j];
      if (s == 0.0 && t == 0.0) continue;
      if (s == 0.0 || t == 0.0) throw validation_error("infinite distortion");
      any = true;
      double r = t / s;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  if (!any) throw validation_error("distortion: source has no distinct points");
  return {rmax / rmin, 1.0 / rmin};
}

DistortionResult distortion(const FiniteMetric& src, const FiniteMetric& dst,
                            const EmbeddingMap& f) {
  if (static_cast<int>(f.size()) != src.n)
    throw validation_error("distortion: embedding map not total");
  std::vector<double> td(static_cast<size_t>(src.n) * src.n, 0.0);
  for (int i = 0; i < src.n; ++i)
    for (int j = 0; j < src.n; ++j)
      td[static_cast<size_t>(i) * src.n + j] = dst(f[i], f[j]);
  return distortion_pairwise(src, td);
}

// --- file formats ---

FiniteMetric read_metric_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw validation_error("metric csv: empty input");
  int n = std::stoi(line);
  if (n <= 0) throw validation_error("metric csv: bad n");
  FiniteMetric m(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw validation_error("metric csv: missing row");
    std::stringstream ss(line);
    std::string cell;
    for (int j = 0; j < n; ++j) {
      if (!std::getline(ss, cell, ',')) throw validation_error("metric csv: short row");
      m.at(i, j) = std::stod(cell);
    }
  }
  return m;
}

FiniteMetric read_metric_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open metric file: " + path);
  return read_metric_csv(in);
}

void write_metric_csv(std::ostream& out, const FiniteMetric& m) {
  out << m.n << "\n";
  out << std::setprecision(17);
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << "\n";
  }
}

void write_metric_csv_file(const std::string& path, const FiniteMetric& m) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write metric file: " + path);
  write_metric_csv(out, m);
}

WeightedGraph read_graph_file(std::istream& in) {
  WeightedGraph g;
  size_t m = 0;
  if (!(in >> g.n >> m)) throw validation_error("graph file: bad header");
  g.edges.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw validation_error("graph file: truncated edge list");
    double w = 1.0;
    // optional weight: peek at the rest of the line
    std::string rest;
    std::getline(in, rest);
    std::stringstream ss(rest);
    ss >> w;
    if (ss.fail()) w = 1.0;
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
      throw validation_error("graph file: vertex index out of range");
    g.edges.push_back({u, v, w});
  }
  return g;
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open graph file: " + path);
  return read_graph_file(in);
}

void write_graph_file(std::ostream& out, const WeightedGraph& g) {
  out << g.n << ' ' << g.edges.size() << "\n";
  out << std::setprecision(17);
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << "\n";
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write graph file: " + path);
  write_graph_file(out, g);
}

}  // namespace avgdist
