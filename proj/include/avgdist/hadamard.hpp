#pragma once

#include <vector>

#include "avgdist/util.hpp"

namespace avgdist {

inline constexpr double kMarginTol = 1e-9;

/// Comparison-inequality margin for a triple with geodesic point phi(t):
/// (1-t) d(x,y)^2 + t d(x,z)^2 - t(1-t) d(y,z)^2 - d(x,phi(t))^2.
/// Nonnegative in nonpositively curved instances, zero in Euclidean ones.
double cat0_margin(double dxy, double dxz, double dyz, double dx_phit, double t);

/// Euclidean triple with the segment geodesic; true iff the margin is
/// >= -kMarginTol at every t in the grid (equality in flat space).
bool cat0_comparison_check(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& z, const std::vector<double>& t_grid);

/// LHS - RHS of the two-point variance decomposition at the weighted mean;
/// zero in Euclidean space.
double two_barycentric_check(const std::vector<std::vector<double>>& points,
                             const std::vector<double>& weights, const std::vector<double>& z);

/// int d(z,x)^p dmu - d(z,B)^p - (1/(2^{p-1}-1)) int d(B,x)^p dmu, with B the
/// weighted mean. Nonnegative for p >= 2 on Euclidean instances.
double p_barycentric_check(const std::vector<std::vector<double>>& points,
                           const std::vector<double>& weights, const std::vector<double>& z,
                           double p);

struct BarycentricCounterexample {
  double eta;  // mu = (delta_{-eta} + delta_{eta}) / 2
  double z;    // violating test point, in {-1, +1}
  double lhs;  // int |z-x|^p dmu
  double rhs;  // |z-B|^p + eps * int |B-x|^p dmu
};

/// Violating instance of the p-barycentric inequality for p in (0,2):
/// eta = 1 for p <= 1, a small eta otherwise. Throws for p >= 2.
BarycentricCounterexample p_barycentric_counterexample(double p, double eps);

}  // namespace avgdist
