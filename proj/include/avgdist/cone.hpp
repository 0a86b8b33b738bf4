#pragma once

#include <string>
#include <vector>

#include "avgdist/metric.hpp"
#include "avgdist/transform.hpp"

namespace avgdist {

/// Point of the Euclidean cone over a finite base metric. s = 0 is the cusp
/// regardless of x.
struct ConePoint {
  double s = 0.0;  // absolute value / radius
  int x = 0;       // index into the base metric (argument)
};

struct PointedSpace {
  FiniteMetric metric;
  int basepoint = 0;
};

/// Law-of-cosines cone distance with angle min{pi, d_base(x,y)}.
double cone_distance(const FiniteMetric& base, const ConePoint& a, const ConePoint& b);

/// Finite slice of the cone at the given radii (optionally plus the cusp).
/// index_of(radius_index, base_index) maps into rows of the returned metric;
/// when the cusp is included it occupies the last row.
struct ConeSpace {
  FiniteMetric metric;
  int n_base = 0;
  int n_radii = 0;
  bool has_cusp = false;
  int index_of(int radius_idx, int base_idx) const { return radius_idx * n_base + base_idx; }
  int cusp_index() const { return n_radii * n_base; }
  std::string index_map_json(const std::vector<double>& radii) const;
};

ConeSpace cone_space(const FiniteMetric& base, const std::vector<double>& radii,
                     bool include_cusp = false);

struct ConeEmbedding {
  ConeSpace space;
  EmbeddingMap map;  // base index -> row of space.metric
  DistortionResult measured;
};

/// x -> (1, x) from (base, min{pi, d}) into cone(base); distortion <= pi/2.
ConeEmbedding cone_truncation_embedding(const FiniteMetric& base);

struct ProductSpace {
  FiniteMetric metric;
  std::vector<int> sizes;  // factor sizes; row index = mixed-radix little-endian
  int index_of(const std::vector<int>& coords) const;
};

inline constexpr long long kProductSizeCap = 1000000;

/// Pointed l_p product on the full Cartesian product of point sets.
ProductSpace lp_product(const std::vector<PointedSpace>& spaces, double p);

struct UnionSpace {
  FiniteMetric metric;
  std::vector<int> offsets;     // per factor: row of its first non-basepoint point
  std::vector<int> basepoints;  // per factor: the identified point
  int glued_index = 0;          // row of the identified basepoint (row 0)
  /// Row of factor point `point_idx` (an index into that factor's metric).
  int index_of(int space_idx, int point_idx) const;
};

/// Pointed l_p union: disjoint union with all basepoints identified.
UnionSpace lp_union(const std::vector<PointedSpace>& spaces, double p);

struct TransformConeEmbedding {
  FiniteMetric target;  // metric induced on the image points x -> (x,(1,x),(1,x),...)
  EmbeddingMap map;     // identity indexing into target
  DistortionResult measured;  // distortion of (base, phi o d) -> target
  TruncationDecomposition decomposition;
};

/// Embeds (base, phi o d) into the l_q product of the slope-alpha0 scaled base
/// and one radius-1 cone slice per decomposition term; measured distortion is
/// at most 6^{1/q} * pi/2.
TransformConeEmbedding transform_cone_embedding(const FiniteMetric& base,
                                                const MetricTransform& phi, double q,
                                                int terms = 64);

/// Function Omega -> cone(base) with weights summing to 1.
struct ConeValuedFunction {
  std::vector<double> weights;
  std::vector<ConePoint> values;
};

double lp_norm(const ConeValuedFunction& f, double p);
double lp_distance(const FiniteMetric& base, const ConeValuedFunction& f,
                   const ConeValuedFunction& g, double p);

/// Radii mapped through the classical Mazur map, arguments unchanged;
/// preserves ||.||: ||psi(f)||_q = ||f||_p. Throws on zero norm with p != q.
ConeValuedFunction mazur_map(const ConeValuedFunction& f, double p, double q);

}  // namespace avgdist
