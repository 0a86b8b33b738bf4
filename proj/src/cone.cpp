#include "avgdist/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace avgdist {

namespace {
constexpr double kPi = std::numbers::pi;
}

double cone_distance(const FiniteMetric& base, const ConePoint& a, const ConePoint& b) {
  double angle = std::min(kPi, base(a.x, b.x));
  // (s-t)^2 + 2st(1-cos angle): numerically stable form of the law of cosines
  double v = (a.s - b.s) * (a.s - b.s) + 2.0 * a.s * b.s * (1.0 - std::cos(angle));
  return std::sqrt(std::max(v, 0.0));
}

ConeSpace cone_space(const FiniteMetric& base, const std::vector<double>& radii,
                     bool include_cusp) {
  if (radii.empty()) throw validation_error("cone_space: radii empty");
  ConeSpace cs;
  cs.n_base = base.n;
  cs.n_radii = static_cast<int>(radii.size());
  cs.has_cusp = include_cusp;
  int total = cs.n_radii * cs.n_base + (include_cusp ? 1 : 0);
  cs.metric = FiniteMetric(total);
  auto point = [&](int row) -> ConePoint {
    if (include_cusp && row == cs.cusp_index()) return {0.0, 0};
    return {radii[row / cs.n_base], row % cs.n_base};
  };
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j)
      cs.metric.set(i, j, cone_distance(base, point(i), point(j)));
  if (!is_metric(cs.metric)) throw internal_error("cone_space: output failed metric validation");
  return cs;
}

std::string ConeSpace::index_map_json(const std::vector<double>& radii) const {
  nlohmann::json j;
  for (int r = 0; r < n_radii; ++r)
    for (int x = 0; x < n_base; ++x) {
      nlohmann::json row;
      row["radius"] = radii[r];
      row["base"] = x;
      row["row"] = index_of(r, x);
      j["points"].push_back(row);
    }
  if (has_cusp) j["cusp_row"] = cusp_index();
  return j.dump();
}

ConeEmbedding cone_truncation_embedding(const FiniteMetric& base) {
  if (base.n == 0) throw validation_error("cone_truncation_embedding: empty base");
  ConeEmbedding e;
  e.space = cone_space(base, {1.0}, false);
  e.map.resize(base.n);
  for (int i = 0; i < base.n; ++i) e.map[i] = i;
  FiniteMetric truncated = apply_transform(base, MetricTransform::truncation(kPi));
  if (base.n >= 2 && truncated.min_positive_distance() > 0.0)
    e.measured = distortion(truncated, e.space.metric, e.map);
  else
    e.measured = {1.0, 1.0};
  return e;
}

int ProductSpace::index_of(const std::vector<int>& coords) const {
  int idx = 0, stride = 1;
  for (size_t k = 0; k < sizes.size(); ++k) {
    idx += coords[k] * stride;
    stride *= sizes[k];
  }
  return idx;
}

ProductSpace lp_product(const std::vector<PointedSpace>& spaces, double p) {
  if (spaces.empty()) throw validation_error("lp_product: empty sequence");
  if (p < 1.0) throw validation_error("lp_product: p must be >= 1");
  long long total = 1;
  for (const auto& s : spaces) {
    total *= s.metric.n;
    if (total > kProductSizeCap) throw validation_error("product too large");
  }
  ProductSpace ps;
  for (const auto& s : spaces) ps.sizes.push_back(s.metric.n);
  int n = static_cast<int>(total);
  ps.metric = FiniteMetric(n);
  auto coords = [&](int idx, std::vector<int>& c) {
    for (size_t k = 0; k < ps.sizes.size(); ++k) {
      c[k] = idx % ps.sizes[k];
      idx /= ps.sizes[k];
    }
  };
  std::vector<int> ci(spaces.size()), cj(spaces.size());
  for (int i = 0; i < n; ++i) {
    coords(i, ci);
    for (int j = i + 1; j < n; ++j) {
      coords(j, cj);
      double acc = 0.0;
      for (size_t k = 0; k < spaces.size(); ++k) {
        double dk = spaces[k].metric(ci[k], cj[k]);
        acc += std::pow(dk, p);
      }
      ps.metric.set(i, j, std::pow(acc, 1.0 / p));
    }
  }
  return ps;
}

int UnionSpace::index_of(int space_idx, int point_idx) const {
  if (point_idx == basepoints[space_idx]) return glued_index;
  int rank = point_idx < basepoints[space_idx] ? point_idx : point_idx - 1;
  return offsets[space_idx] + rank;
}

UnionSpace lp_union(const std::vector<PointedSpace>& spaces, double p) {
  if (spaces.empty()) throw validation_error("lp_union: empty sequence");
  if (p < 1.0) throw validation_error("lp_union: p must be >= 1");
  UnionSpace us;
  int total = 1;  // glued basepoint is row 0
  for (const auto& s : spaces) {
    us.offsets.push_back(total);
    us.basepoints.push_back(s.basepoint);
    total += s.metric.n - 1;
  }
  us.glued_index = 0;
  us.metric = FiniteMetric(total);
  // local row layout per factor: points != basepoint in original order
  auto local_points = [&](int k) {
    std::vector<int> pts;
    for (int i = 0; i < spaces[k].metric.n; ++i)
      if (i != spaces[k].basepoint) pts.push_back(i);
    return pts;
  };
  std::vector<std::vector<int>> pts;
  for (size_t k = 0; k < spaces.size(); ++k) pts.push_back(local_points(static_cast<int>(k)));
  // distances to the glued point
  for (size_t k = 0; k < spaces.size(); ++k)
    for (size_t a = 0; a < pts[k].size(); ++a)
      us.metric.set(0, us.offsets[k] + static_cast<int>(a),
                    spaces[k].metric(spaces[k].basepoint, pts[k][a]));
  // within and across factors
  for (size_t k = 0; k < spaces.size(); ++k) {
    for (size_t a = 0; a < pts[k].size(); ++a)
      for (size_t b = a + 1; b < pts[k].size(); ++b)
        us.metric.set(us.offsets[k] + static_cast<int>(a), us.offsets[k] + static_cast<int>(b),
                      spaces[k].metric(pts[k][a], pts[k][b]));
    for (size_t m = k + 1; m < spaces.size(); ++m)
      for (size_t a = 0; a < pts[k].size(); ++a)
        for (size_t b = 0; b < pts[m].size(); ++b) {
          double da = spaces[k].metric(pts[k][a], spaces[k].basepoint);
          double db = spaces[m].metric(pts[m][b], spaces[m].basepoint);
          double v = std::pow(std::pow(da, p) + std::pow(db, p), 1.0 / p);
          us.metric.set(us.offsets[k] + static_cast<int>(a), us.offsets[m] + static_cast<int>(b),
                        v);
        }
  }
  return us;
}

TransformConeEmbedding transform_cone_embedding(const FiniteMetric& base,
                                                const MetricTransform& phi, double q,
                                                int terms) {
  if (q < 2.0) throw validation_error("transform_cone_embedding: q must be >= 2");
  const int n = base.n;
  double lo = base.min_positive_distance();
  double hi = base.max_distance();
  if (lo == 0.0) throw validation_error("transform_cone_embedding: base has no positive distances");

  TransformConeEmbedding out;
  out.decomposition = decompose_power(phi, q, lo, hi, terms);
  const auto& td = out.decomposition;

  // rho(x,y)^q = alpha0 * d^q + sum_k (beta_k^{1/q}/pi * cone-dist in
  // cone(X, (alpha_k/beta_k)^{1/q} pi d) at radius 1)^q
  out.target = FiniteMetric(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = base(i, j);
      double acc = td.alpha0 * std::pow(d, q);
      for (auto [a, b] : td.terms) {
        double scale = std::pow(a / b, 1.0 / q) * kPi;
        double angle = std::min(kPi, scale * d);
        double cd = std::sqrt(std::max(2.0 * (1.0 - std::cos(angle)), 0.0));
        double rho = std::pow(b, 1.0 / q) / kPi * cd;
        acc += std::pow(rho, q);
      }
      out.target.set(i, j, std::pow(acc, 1.0 / q));
    }

  out.map.resize(n);
  for (int i = 0; i < n; ++i) out.map[i] = i;
  FiniteMetric source = apply_transform(base, phi);
  out.measured = distortion(source, out.target, out.map);
  return out;
}

double lp_norm(const ConeValuedFunction& f, double p) {
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) acc += f.weights[i] * std::pow(f.values[i].s, p);
  return std::pow(acc, 1.0 / p);
}

double lp_distance(const FiniteMetric& base, const ConeValuedFunction& f,
                   const ConeValuedFunction& g, double p) {
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    acc += f.weights[i] * std::pow(cone_distance(base, f.values[i], g.values[i]), p);
  return std::pow(acc, 1.0 / p);
}

ConeValuedFunction mazur_map(const ConeValuedFunction& f, double p, double q) {
  if (p == q) return f;
  double norm = lp_norm(f, p);
  if (norm == 0.0) throw validation_error("undefined Mazur image");
  ConeValuedFunction g = f;
  for (auto& v : g.values) v.s = std::pow(norm, 1.0 - p / q) * std::pow(v.s, p / q);
  return g;
}

}  // namespace avgdist
