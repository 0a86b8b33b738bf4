#include "avgdist/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "avgdist/util.hpp"

namespace avgdist {

RegularGraph zigzag_product(const RegularGraph& g1, const RegularGraph& h) {
  if (h.n != g1.d) throw validation_error("zigzag_product: |V_h| must equal deg(g1)");
  if (g1.d < 3) throw validation_error("zigzag_product: deg(g1) < 3 unsupported");
  const int n1 = g1.n, d1 = g1.d, d2 = h.d;
  RegularGraph z(n1 * d1, d2 * d2);
  for (int v = 0; v < n1; ++v)
    for (int k = 0; k < d1; ++k)
      for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
          auto [k1, i1] = h.at(k, i);      // small step
          auto [w, l] = g1.at(v, k1);      // big step
          auto [l1, j1] = h.at(l, j);      // small step
          z.at(v * d1 + k, i * d2 + j) = {w * d1 + l1, j1 * d2 + i1};
        }
  z.check_valid();
  return z;
}

RegularGraph cesaro_average(const RegularGraph& g, int m) {
  if (m < 1) throw validation_error("cesaro_average: m must be >= 1");
  const int n = g.n, d = g.d;
  double deg_d = static_cast<double>(m) * std::pow(static_cast<double>(d), m - 1);
  if (deg_d > static_cast<double>(kDegreeCap)) throw validation_error("cesaro_average: degree overflow");
  const long long degree = static_cast<long long>(std::llround(deg_d));

  // per-row walk counts of length t, accumulated with weight d^{m-1-t}
  std::vector<std::map<int, long long>> mult(n);
  for (int u = 0; u < n; ++u) {
    std::map<int, long long> walk;  // t-step walk counts from u
    walk[u] = 1;
    long long scale = 1;
    for (int t = m - 2; t >= 0; --t) scale *= d;  // d^{m-1}
    for (int t = 0; t < m; ++t) {
      for (auto [v, c] : walk) mult[u][v] += c * scale;
      if (t + 1 < m) {
        std::map<int, long long> next;
        for (auto [v, c] : walk)
          for (int p = 0; p < d; ++p) next[g.at(v, p).v] += c;
        walk.swap(next);
        scale /= d;
      }
    }
  }

  RegularGraph out(n, static_cast<int>(degree));
  std::vector<int> next_port(n, 0);
  for (int u = 0; u < n; ++u) {
    // loops first (fixed points), then edges to larger-indexed vertices
    long long self = mult[u].count(u) ? mult[u][u] : 0;
    for (long long r = 0; r < self; ++r) {
      int p = next_port[u]++;
      out.at(u, p) = {u, p};
    }
  }
  for (int u = 0; u < n; ++u)
    for (auto [v, c] : mult[u]) {
      if (v <= u) continue;
      for (long long r = 0; r < c; ++r) {
        int pu = next_port[u]++, pv = next_port[v]++;
        out.at(u, pu) = {v, pv};
        out.at(v, pv) = {u, pu};
      }
    }
  for (int u = 0; u < n; ++u)
    if (next_port[u] != degree) throw internal_error("cesaro_average: degree mismatch");
  out.check_valid();
  return out;
}

RegularGraph edge_completion(const RegularGraph& g, int D) {
  if (D < g.d) throw validation_error("edge_completion: D must be >= d");
  const int n = g.n, d = g.d;
  const int c = D / d;
  RegularGraph out(n, D);
  for (int v = 0; v < n; ++v) {
    for (int p = 0; p < d; ++p) {
      auto [w, q] = g.at(v, p);
      for (int r = 0; r < c; ++r) out.at(v, p * c + r) = {w, q * c + r};
    }
    for (int p = d * c; p < D; ++p) out.at(v, p) = {v, p};
  }
  out.check_valid();
  return out;
}

RegularGraph three_regularize(const RegularGraph& g) {
  if (g.d < 3) throw validation_error("three_regularize: d must be >= 3");
  const int n = g.n, d = g.d;
  // vertex (v,i) -> cycle over the d ports of v; port 0/1 cycle, port 2 match
  RegularGraph out(n * d, 3);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) {
      int id = v * d + i;
      out.at(id, 0) = {v * d + (i + 1) % d, 1};
      out.at(id, 1) = {v * d + (i + d - 1) % d, 0};
      auto [w, j] = g.at(v, i);
      out.at(id, 2) = {w * d + j, 2};
    }
  out.check_valid();
  return out;
}

ZigzagIteration zigzag_iterate(const IterationConfig& cfg) {
  const int n0 = cfg.H.n, d0 = cfg.H.d;
  if (n0 < d0 * d0 * d0) throw validation_error("zigzag_iterate: requires n0 >= d0^3");
  int m0_max = static_cast<int>(std::floor(std::log(static_cast<double>(n0)) /
                                           (3.0 * std::log(static_cast<double>(d0)))));
  if (cfg.m0 < 1 || cfg.m0 > m0_max)
    throw validation_error("zigzag_iterate: m0 outside [1, floor(log n0 / (3 log d0))]");
  if (cfg.j_max < 1) throw validation_error("zigzag_iterate: j_max must be >= 1");

  ZigzagIteration it;
  RegularGraph gj = complete_graph_with_loops(n0);
  for (int j = 1; j <= cfg.j_max; ++j) {
    if (j > 1) {
      RegularGraph z = zigzag_product(gj, cfg.H);
      RegularGraph a = cesaro_average(z, cfg.m0);
      if (a.d > n0) throw validation_error("zigzag_iterate: Cesaro degree exceeds n0");
      gj = edge_completion(a, n0);
    }
    ZigzagStage stage;
    stage.j = j;
    if (static_cast<long long>(gj.n) * gj.d <= cfg.spectral_cap && gj.connected())
      stage.gamma2_plus = normalized_spectrum(gj).gamma2_plus;
    stage.graph = gj;
    it.stages.push_back(std::move(stage));
    if (j < cfg.j_max &&
        static_cast<long long>(gj.n) * n0 > cfg.vertex_cap) {
      it.truncated = true;
      break;
    }
  }
  return it;
}

}  // namespace avgdist
