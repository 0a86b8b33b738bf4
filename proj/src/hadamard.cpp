#include "avgdist/hadamard.hpp"

#include <cmath>
#include <tuple>

namespace avgdist {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

std::vector<double> weighted_mean(const std::vector<std::vector<double>>& points,
                                  const std::vector<double>& weights) {
  std::vector<double> b(points[0].size(), 0.0);
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t t = 0; t < b.size(); ++t) b[t] += weights[i] * points[i][t];
  return b;
}

void check_weights(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& weights) {
  if (points.empty() || points.size() != weights.size())
    throw validation_error("barycentric check: points/weights mismatch");
  double s = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw validation_error("barycentric check: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9)
    throw validation_error("barycentric check: weights must sum to 1");
}

}  // namespace

double cat0_margin(double dxy, double dxz, double dyz, double dx_phit, double t) {
  return (1.0 - t) * dxy * dxy + t * dxz * dxz - t * (1.0 - t) * dyz * dyz -
         dx_phit * dx_phit;
}

bool cat0_comparison_check(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& z, const std::vector<double>& t_grid) {
  double dxy = euclid(x, y), dxz = euclid(x, z), dyz = euclid(y, z);
  for (double t : t_grid) {
    std::vector<double> phit(y.size());
    for (size_t i = 0; i < y.size(); ++i) phit[i] = (1.0 - t) * y[i] + t * z[i];
    if (cat0_margin(dxy, dxz, dyz, euclid(x, phit), t) < -kMarginTol) return false;
  }
  return true;
}

double two_barycentric_check(const std::vector<std::vector<double>>& points,
                             const std::vector<double>& weights, const std::vector<double>& z) {
  check_weights(points, weights);
  std::vector<double> b = weighted_mean(points, weights);
  double lhs = 0.0, var = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    lhs += weights[i] * std::pow(euclid(z, points[i]), 2.0);
    var += weights[i] * std::pow(euclid(b, points[i]), 2.0);
  }
  return lhs - std::pow(euclid(z, b), 2.0) - var;
}

double p_barycentric_check(const std::vector<std::vector<double>>& points,
                           const std::vector<double>& weights, const std::vector<double>& z,
                           double p) {
  if (p < 2.0) throw validation_error("p_barycentric_check: p must be >= 2");
  check_weights(points, weights);
  std::vector<double> b = weighted_mean(points, weights);
  double lhs = 0.0, moment = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    lhs += weights[i] * std::pow(euclid(z, points[i]), p);
    moment += weights[i] * std::pow(euclid(b, points[i]), p);
  }
  return lhs - std::pow(euclid(z, b), p) - moment / (std::pow(2.0, p - 1.0) - 1.0);
}

BarycentricCounterexample p_barycentric_counterexample(double p, double eps) {
  if (p >= 2.0) throw validation_error("no counterexample exists");
  if (!(p > 0.0)) throw validation_error("p_barycentric_counterexample: p must be in (0,2)");
  if (!(eps > 0.0 && eps <= 1.0))
    throw validation_error("p_barycentric_counterexample: eps must be in (0,1]");
  auto evaluate = [&](double eta) {
    // mu = (delta_{-eta} + delta_{eta})/2, barycenter 0, test point z = 1
    double lhs = (std::pow(1.0 + eta, p) + std::pow(std::abs(1.0 - eta), p)) / 2.0;
    double rhs = 1.0 + eps * std::pow(eta, p);
    return std::make_pair(lhs, rhs);
  };
  double eta = 1.0;
  if (p > 1.0) {
    // eta well below (eps / (p(p-1)))^{1/(2-p)}
    eta = 0.25 * std::pow(eps / (p * (p - 1.0)), 1.0 / (2.0 - p));
    auto [lhs, rhs] = evaluate(eta);
    while (lhs >= rhs && eta > 1e-12) {  // scan downward if the bound is not yet strict
      eta /= 2.0;
      std::tie(lhs, rhs) = evaluate(eta);
    }
  }
  auto [lhs, rhs] = evaluate(eta);
  if (lhs >= rhs) throw internal_error("p_barycentric_counterexample: no violation found");
  return {eta, 1.0, lhs, rhs};
}

}  // namespace avgdist
