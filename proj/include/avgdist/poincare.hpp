#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avgdist/graph.hpp"

namespace avgdist {

enum class GammaMode { Gamma, GammaPlus };

struct PoincareEstimate {
  double value = 0.0;
  enum Kind { ExactSpectral, Enumerated, SearchLowerBound } kind = Enumerated;
  std::vector<int> witness_f;  // vertex -> target point index
  std::vector<int> witness_g;  // empty for Gamma mode
};

/// Ratio of the two sides of the Poincare inequality for a given assignment.
/// Edge sums run over ordered port-pairs, |E| = n*d. Returns nullopt for the
/// degenerate 0/0 case and kInf when only the edge side vanishes.
std::optional<double> poincare_ratio(const RegularGraph& g, const FiniteMetric& target,
                                     double p, const std::vector<int>& f);
std::optional<double> poincare_ratio_plus(const RegularGraph& g, const FiniteMetric& target,
                                          double p, const std::vector<int>& f,
                                          const std::vector<int>& fg);

/// gamma_2(G, R) = 1/(1 - lambda_2) and gamma_2^+(G, R) = 1/(1 - lambda),
/// exact under the ordered-edge convention.
PoincareEstimate poincare_real2(const RegularGraph& g, GammaMode mode);

/// Exhaustive over target^V when the assignment count fits the budget,
/// otherwise coordinate best-response search from `restarts` seeded starts
/// (a certified lower bound with witness).
PoincareEstimate poincare_estimate(const RegularGraph& g, const FiniteMetric& target, double p,
                                   GammaMode mode, long long budget = 1000000,
                                   int restarts = 32, uint64_t seed = 0,
                                   const std::vector<std::vector<int>>& extra_seeds = {});

/// Uniform grid metric on [0,1] with `levels` points (target for real-valued
/// searches).
FiniteMetric grid_metric(int levels);

/// Gamma_p(G, {0,1}) = 1/conductance; independent of p.
double gamma_two_point(const RegularGraph& g, int exact_threshold = 22);

struct ExtrapolationReport {
  double gamma2_real;     // exact spectral
  double gamma_p_01;      // gamma_p(G,{0,1}) = 1/conductance
  bool sandwich_ok;       // gamma2 >= gamma_p_01 >= sqrt(gamma2/8)
  double mat_lhs;         // search estimate of gamma_p(G, grid)
  double mat_rhs;         // gamma_q(G, grid)^{max(1,p/q)}
  double mat_constant;    // lhs / rhs (empirical constant of the extrapolation)
  double naor_constant;   // empirical constant of the (gamma (p^2+q^2))^{1/min(p,2)} bound
  std::vector<std::string> flags;
};

/// Evaluates the Cheeger sandwich and the two extrapolation inequalities with
/// estimated constants; flags explicit-constant violations.
ExtrapolationReport extrapolation_checks(const RegularGraph& g, double p, double q,
                                         uint64_t seed = 0);

}  // namespace avgdist
