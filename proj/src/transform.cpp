#include "avgdist/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace avgdist {

double MetricTransform::operator()(double t) const {
  switch (kind) {
    case Kind::Identity:
      return t;
    case Kind::Truncation:
      return std::min(t, tau);
    case Kind::Snowflake:
      return std::pow(t, theta);
    case Kind::Log1p:
      return std::log1p(t);
    case Kind::PiecewiseLinearConcave: {
      if (t <= 0.0) return 0.0;
      double pt = 0.0, pv = 0.0;
      for (auto [bt, bv] : breakpoints) {
        if (t <= bt) return pv + (bv - pv) * (t - pt) / (bt - pt);
        pt = bt;
        pv = bv;
      }
      if (breakpoints.size() >= 2) {
        auto [at, av] = breakpoints[breakpoints.size() - 2];
        auto [bt, bv] = breakpoints.back();
        return bv + (bv - av) / (bt - at) * (t - bt);
      }
      // single breakpoint: linear through origin
      return pv / pt * t;
    }
  }
  return t;
}

MetricTransform MetricTransform::truncation(double tau) {
  MetricTransform p;
  p.kind = Kind::Truncation;
  p.tau = tau;
  return p;
}

MetricTransform MetricTransform::snowflake(double theta) {
  MetricTransform p;
  p.kind = Kind::Snowflake;
  p.theta = theta;
  return p;
}

MetricTransform MetricTransform::log1p() {
  MetricTransform p;
  p.kind = Kind::Log1p;
  return p;
}

MetricTransform MetricTransform::piecewise_linear(std::vector<std::pair<double, double>> pts) {
  MetricTransform p;
  p.kind = Kind::PiecewiseLinearConcave;
  p.breakpoints = std::move(pts);
  return p;
}

std::string MetricTransform::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::Identity:
      j["kind"] = "identity";
      break;
    case Kind::Truncation:
      j["kind"] = "truncation";
      j["params"]["tau"] = tau;
      break;
    case Kind::Snowflake:
      j["kind"] = "snowflake";
      j["params"]["theta"] = theta;
      break;
    case Kind::Log1p:
      j["kind"] = "log1p";
      break;
    case Kind::PiecewiseLinearConcave: {
      j["kind"] = "piecewise-linear-concave";
      auto& bp = j["params"]["breakpoints"];
      for (auto [t, v] : breakpoints) bp.push_back({t, v});
      break;
    }
  }
  return j.dump();
}

MetricTransform MetricTransform::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return identity();
  if (kind == "truncation") return truncation(j.at("params").at("tau").get<double>());
  if (kind == "snowflake") return snowflake(j.at("params").at("theta").get<double>());
  if (kind == "log1p") return log1p();
  if (kind == "piecewise-linear-concave") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : j.at("params").at("breakpoints"))
      pts.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    return piecewise_linear(std::move(pts));
  }
  throw validation_error("unknown transform kind: " + kind);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  g.reserve(points);
  if (lo <= 0.0) throw validation_error("log_grid: lo must be positive");
  double r = std::log(hi / lo);
  for (int i = 0; i < points; ++i)
    g.push_back(lo * std::exp(r * i / static_cast<double>(points - 1)));
  return g;
}

TransformCheck check_transform(const MetricTransform& phi, const std::vector<double>& grid) {
  const double tol = 1e-12;
  if (std::abs(phi(0.0)) > tol) return {false, "phi(0) != 0", 0.0};
  double prev_t = 0.0, prev_v = 0.0;
  for (double t : grid) {
    if (t <= prev_t) return {false, "grid not sorted/positive", t};
    double v = phi(t);
    if (v < prev_v - tol * std::max(1.0, std::abs(prev_v)))
      return {false, "not nondecreasing", t};
    prev_t = t;
    prev_v = v;
  }
  // chord concavity on consecutive triples (including the origin)
  std::vector<double> ts;
  ts.push_back(0.0);
  ts.insert(ts.end(), grid.begin(), grid.end());
  for (size_t i = 0; i + 2 < ts.size(); ++i) {
    double a = ts[i], b = ts[i + 1], c = ts[i + 2];
    double chord = phi(a) + (phi(c) - phi(a)) * (b - a) / (c - a);
    if (phi(b) < chord - 1e-9 * std::max(1.0, std::abs(chord)))
      return {false, "not concave", b};
  }
  return {true, "", 0.0};
}

namespace {

// Piecewise-linear interpolant of f through the origin and geometric nodes,
// written as alpha0*t + sum min{alpha_k t, beta_k}. Concavity of f puts the
// chords in [f/2, f] on ratio-2 intervals, inside the required envelope.
TruncationDecomposition chord_decomposition(const std::function<double(double)>& f,
                                            double t_min, double t_max, int terms) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw validation_error("decompose: bad domain");
  int needed = static_cast<int>(std::ceil(std::log2(t_max / t_min) - 1e-12));
  needed = std::max(needed, 1);
  if (needed > terms) throw validation_error("insufficient terms");
  std::vector<double> nodes;
  for (int k = 0; k <= needed; ++k) nodes.push_back(std::min(t_min * std::pow(2.0, k), t_max));
  nodes.back() = t_max;

  std::vector<double> slope(nodes.size());  // slope[k] = secant on [node_{k-1}, node_k]
  slope[0] = f(nodes[0]) / nodes[0];        // from the origin
  for (size_t k = 1; k < nodes.size(); ++k)
    slope[k] = (f(nodes[k]) - f(nodes[k - 1])) / (nodes[k] - nodes[k - 1]);

  TruncationDecomposition td;
  td.t_min = t_min;
  td.t_max = t_max;
  td.alpha0 = std::max(slope.back(), 0.0);
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    double a = slope[k] - slope[k + 1];
    if (a > 1e-15 * std::max(1.0, slope[0])) td.terms.push_back({a, a * nodes[k]});
  }
  return td;
}

}  // namespace

TruncationDecomposition decompose(const MetricTransform& phi, double t_min, double t_max,
                                  int terms) {
  {
    auto chk = check_transform(phi, log_grid(t_min, t_max, 256));
    if (!chk.ok) throw validation_error("not a metric transform: " + chk.violation);
  }
  // exact short-circuits
  if (phi.kind == MetricTransform::Kind::Identity) {
    TruncationDecomposition td;
    td.alpha0 = 1.0;
    td.t_min = t_min;
    td.t_max = t_max;
    return td;
  }
  if (phi.kind == MetricTransform::Kind::Truncation) {
    TruncationDecomposition td;
    td.alpha0 = 0.0;
    td.terms = {{1.0, phi.tau}};
    td.t_min = t_min;
    td.t_max = t_max;
    return td;
  }
  return chord_decomposition([&](double t) { return phi(t); }, t_min, t_max, terms);
}

TruncationDecomposition decompose_power(const MetricTransform& phi, double q, double t_min,
                                        double t_max, int terms) {
  if (q < 1.0) throw validation_error("decompose_power: q must be >= 1");
  {
    auto chk = check_transform(phi, log_grid(t_min, t_max, 256));
    if (!chk.ok) throw validation_error("not a metric transform: " + chk.violation);
  }
  // omega(t) = phi(t^{1/q})^q, decomposed over the omega-domain [t_min^q, t_max^q]
  if (phi.kind == MetricTransform::Kind::Identity ||
      (phi.kind == MetricTransform::Kind::Snowflake && phi.theta == 1.0)) {
    TruncationDecomposition td;
    td.alpha0 = 1.0;
    td.t_min = std::pow(t_min, q);
    td.t_max = std::pow(t_max, q);
    return td;
  }
  if (phi.kind == MetricTransform::Kind::Truncation) {
    TruncationDecomposition td;
    td.alpha0 = 0.0;
    td.terms = {{1.0, std::pow(phi.tau, q)}};
    td.t_min = std::pow(t_min, q);
    td.t_max = std::pow(t_max, q);
    return td;
  }
  auto omega = [&](double t) { return std::pow(phi(std::pow(t, 1.0 / q)), q); };
  return chord_decomposition(omega, std::pow(t_min, q), std::pow(t_max, q), terms);
}

FiniteMetric apply_transform(const FiniteMetric& m, const MetricTransform& phi) {
  double hi = m.max_distance();
  double lo = m.min_positive_distance();
  if (hi > 0.0) {
    auto chk = check_transform(phi, log_grid(lo, hi * (1.0 + 1e-12), 1024));
    if (!chk.ok) throw validation_error("not a metric transform: " + chk.violation);
  }
  FiniteMetric out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out.at(i, j) = (i == j) ? 0.0 : phi(m(i, j));
  return out;
}

void write_decomposition_csv(std::ostream& out, const TruncationDecomposition& td) {
  out.precision(17);
  out << "alpha0," << td.alpha0 << "\n";
  for (auto [a, b] : td.terms) out << a << ',' << b << "\n";
}

TruncationDecomposition read_decomposition_csv(std::istream& in) {
  TruncationDecomposition td;
  std::string line;
  if (!std::getline(in, line)) throw validation_error("decomposition csv: empty");
  auto comma = line.find(',');
  if (line.substr(0, comma) != "alpha0") throw validation_error("decomposition csv: bad header");
  td.alpha0 = std::stod(line.substr(comma + 1));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    td.terms.push_back({std::stod(a), std::stod(b)});
  }
  return td;
}

}  // namespace avgdist
