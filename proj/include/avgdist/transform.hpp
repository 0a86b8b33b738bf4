#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "avgdist/metric.hpp"

namespace avgdist {

/// Concave nondecreasing function with value 0 at 0. Composing one with any
/// metric yields a metric.
struct MetricTransform {
  enum class Kind { Identity, Truncation, Snowflake, Log1p, PiecewiseLinearConcave };

  Kind kind = Kind::Identity;
  double tau = 0.0;    // Truncation
  double theta = 1.0;  // Snowflake exponent in (0,1]
  // PiecewiseLinearConcave: (t_i, value_i) breakpoints, t ascending, implicit (0,0);
  // extended beyond the last breakpoint with the final slope.
  std::vector<std::pair<double, double>> breakpoints;

  double operator()(double t) const;

  static MetricTransform identity() { return {}; }
  static MetricTransform truncation(double tau);
  static MetricTransform snowflake(double theta);
  static MetricTransform log1p();
  static MetricTransform piecewise_linear(std::vector<std::pair<double, double>> pts);

  std::string to_json() const;
  static MetricTransform from_json(const std::string& text);
};

struct TransformCheck {
  bool ok;
  std::string violation;  // empty when ok
  double at = 0.0;        // grid point witnessing the first violation
};

/// Monotonicity, chord-concavity, and value 0 at 0 on the given grid.
TransformCheck check_transform(const MetricTransform& phi, const std::vector<double>& grid);

/// 1024 log-spaced points covering [lo, hi] (plus 0 handled by the check).
std::vector<double> log_grid(double lo, double hi, int points = 1024);

/// phi_hat(t) = alpha0*t + sum_k min{alpha_k*t, beta_k}, valid on [t_min, t_max].
struct TruncationDecomposition {
  double alpha0 = 0.0;
  std::vector<std::pair<double, double>> terms;  // (alpha_k, beta_k), beta_k > 0
  double t_min = 0.0, t_max = 0.0;

  double eval(double t) const {
    double s = alpha0 * t;
    for (auto [a, b] : terms) s += std::min(a * t, b);
    return s;
  }
};

/// Decomposition with phi/2 <= phi_hat <= 3*phi on [t_min, t_max].
/// Throws validation_error("insufficient terms") when the budget cannot cover
/// the domain at envelope-preserving resolution.
TruncationDecomposition decompose(const MetricTransform& phi, double t_min, double t_max,
                                  int terms = 64);

/// Decomposition of omega(t) = phi(t^{1/q})^q over [t_min^q, t_max^q], so that
/// (1/3)*phi_hat(t^q) <= phi(t)^q <= 2*phi_hat(t^q) for t in [t_min, t_max].
TruncationDecomposition decompose_power(const MetricTransform& phi, double q, double t_min,
                                        double t_max, int terms = 64);

/// Entrywise phi(d); validates that phi is a metric transform on the range of
/// m first (error "not a metric transform").
FiniteMetric apply_transform(const FiniteMetric& m, const MetricTransform& phi);

// Decomposition CSV: "alpha0,<v>" line, then "alpha,beta" rows.
void write_decomposition_csv(std::ostream& out, const TruncationDecomposition& td);
TruncationDecomposition read_decomposition_csv(std::istream& in);

}  // namespace avgdist
