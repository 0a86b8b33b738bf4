#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "avgdist/adversary.hpp"
#include "avgdist/approximator.hpp"
#include "avgdist/cone.hpp"
#include "avgdist/embedding.hpp"
#include "avgdist/graph.hpp"
#include "avgdist/hadamard.hpp"
#include "avgdist/poincare.hpp"
#include "avgdist/transform.hpp"
#include "avgdist/zigzag.hpp"

namespace py = pybind11;
using namespace avgdist;

namespace {

FiniteMetric metric_from_rows(const std::vector<std::vector<double>>& rows) {
  FiniteMetric m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n; ++i) {
    if (static_cast<int>(rows[i].size()) != m.n)
      throw validation_error("metric rows must form a square matrix");
    for (int j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> metric_to_rows(const FiniteMetric& m) {
  std::vector<std::vector<double>> rows(m.n, std::vector<double>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[i][j] = m(i, j);
  return rows;
}

MetricTransform transform_from_name(const std::string& kind, double param) {
  if (kind == "identity") return MetricTransform::identity();
  if (kind == "truncation") return MetricTransform::truncation(param);
  if (kind == "snowflake") return MetricTransform::snowflake(param);
  if (kind == "log1p") return MetricTransform::log1p();
  throw validation_error("unknown transform kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "average-distance approximators, adversaries, and expander tools";

  py::register_exception<validation_error>(m, "ValidationError");

  py::class_<FiniteMetric>(m, "FiniteMetric")
      .def(py::init([](const std::vector<std::vector<double>>& rows) {
        return metric_from_rows(rows);
      }))
      .def_readonly("n", &FiniteMetric::n)
      .def("__call__", [](const FiniteMetric& m_, int i, int j) { return m_(i, j); })
      .def("rows", &metric_to_rows);

  m.def("validate_metric", [](const FiniteMetric& mm) { return validate_metric(mm).size(); },
        "number of violated metric axioms (0 for a valid metric)");
  m.def("average_distance", py::overload_cast<const FiniteMetric&>(&average_distance));
  m.def("shortest_path_metric",
        [](int n, const std::vector<std::tuple<int, int, double>>& edges,
           std::optional<double> cap) {
          WeightedGraph g;
          g.n = n;
          for (auto [u, v, w] : edges) g.edges.push_back({u, v, w});
          return shortest_path_metric(g, cap);
        },
        py::arg("n"), py::arg("edges"), py::arg("cap") = std::nullopt);
  m.def("distortion", [](const FiniteMetric& src, const FiniteMetric& dst,
                         const std::vector<int>& f) {
    auto r = distortion(src, dst, f);
    return std::make_pair(r.distortion, r.scale);
  });
  m.def("apply_transform", [](const FiniteMetric& mm, const std::string& kind, double param) {
    return apply_transform(mm, transform_from_name(kind, param));
  }, py::arg("metric"), py::arg("kind"), py::arg("param") = 0.0);

  m.def("decompose", [](const std::string& kind, double param, double t_min, double t_max,
                        int terms) {
    auto td = decompose(transform_from_name(kind, param), t_min, t_max, terms);
    return std::make_pair(td.alpha0, td.terms);
  }, py::arg("kind"), py::arg("param"), py::arg("t_min"), py::arg("t_max"),
     py::arg("terms") = 64);

  py::class_<RegularGraph>(m, "RegularGraph")
      .def_readonly("n", &RegularGraph::n)
      .def_readonly("d", &RegularGraph::d)
      .def("edges", [](const RegularGraph& g) {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : g.to_weighted().edges) out.push_back({e.u, e.v});
        return out;
      })
      .def("connected", &RegularGraph::connected);

  m.def("random_regular", &random_regular, py::arg("n"), py::arg("d"), py::arg("seed"),
        py::arg("max_attempts") = 1000);
  m.def("complete_graph", &complete_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("girth", [](const RegularGraph& g) { return girth(g); });
  m.def("diameter", [](const RegularGraph& g) { return diameter(g); });
  m.def("conductance", [](const RegularGraph& g, int threshold) {
    auto r = conductance(g, threshold);
    return std::make_pair(r.value, r.exact);
  }, py::arg("g"), py::arg("exact_threshold") = 22);
  m.def("normalized_spectrum", [](const RegularGraph& g) {
    auto s = normalized_spectrum(g);
    py::dict d;
    d["lambda2"] = s.lambda2;
    d["lambda_n"] = s.lambda_n;
    d["gamma2"] = s.gamma2;
    d["gamma2_plus"] = s.gamma2_plus;
    d["bipartite"] = s.bipartite_flag;
    return d;
  });
  m.def("poincare_estimate",
        [](const RegularGraph& g, const FiniteMetric& target, double p, const std::string& mode,
           long long budget) {
          auto e = poincare_estimate(g, target, p,
                                     mode == "gamma+" ? GammaMode::GammaPlus : GammaMode::Gamma,
                                     budget);
          py::dict d;
          d["value"] = e.value;
          d["kind"] = e.kind == PoincareEstimate::Enumerated ? "enumerated" : "search-lower-bound";
          d["witness"] = e.witness_f;
          return d;
        },
        py::arg("g"), py::arg("target"), py::arg("p") = 2.0, py::arg("mode") = "gamma",
        py::arg("budget") = 1000000);

  m.def("zigzag_product", &zigzag_product);
  m.def("cesaro_average", &cesaro_average);
  m.def("edge_completion", &edge_completion);
  m.def("three_regularize", &three_regularize);
  m.def("zigzag_iterate", [](const RegularGraph& H, int m0, int j_max) {
    IterationConfig cfg;
    cfg.H = H;
    cfg.m0 = m0;
    cfg.j_max = j_max;
    auto it = zigzag_iterate(cfg);
    py::list stages;
    for (const auto& st : it.stages) {
      py::dict d;
      d["j"] = st.j;
      d["n"] = st.graph.n;
      d["d"] = st.graph.d;
      if (st.gamma2_plus) d["gamma2_plus"] = *st.gamma2_plus;
      stages.append(d);
    }
    return stages;
  });

  m.def("cone_distance", [](const FiniteMetric& base, double s, int x, double t, int y) {
    return cone_distance(base, {s, x}, {t, y});
  });
  m.def("cone_space", [](const FiniteMetric& base, const std::vector<double>& radii,
                         bool cusp) { return cone_space(base, radii, cusp).metric; },
        py::arg("base"), py::arg("radii"), py::arg("include_cusp") = false);
  m.def("cone_truncation_distortion",
        [](const FiniteMetric& base) { return cone_truncation_embedding(base).measured.distortion; });
  m.def("transform_cone_distortion",
        [](const FiniteMetric& base, const std::string& kind, double param, double q, int terms) {
          return transform_cone_embedding(base, transform_from_name(kind, param), q, terms)
              .measured.distortion;
        },
        py::arg("base"), py::arg("kind"), py::arg("param"), py::arg("q") = 2.0,
        py::arg("terms") = 64);

  m.def("universal_query_set", [](const RegularGraph& expander, int n) {
    auto q = universal_query_set(expander, n);
    py::dict d;
    d["pairs"] = q.pairs;
    d["sigma"] = q.sigma;
    d["collapsed"] = q.collapsed;
    return d;
  });
  m.def("sandwich_check", [](const RegularGraph& expander, const FiniteMetric& mm,
                             const std::vector<int>& points) {
    auto q = universal_query_set(expander, static_cast<int>(points.size()));
    auto rep = sandwich_check(q, mm, points);
    py::dict d;
    d["lower_ok"] = rep.lower_ok;
    d["upper_ratio"] = rep.upper_ratio;
    d["mean_over_pairs"] = rep.mean_over_pairs;
    d["exact_average"] = rep.exact_average;
    return d;
  });

  m.def("adversary_game", [](int n, int k, long long queries, const std::string& strategy,
                             uint64_t seed) {
    Strategy strat;
    if (strategy == "random")
      strat = random_pairs_strategy(n, seed);
    else if (strategy == "greedy")
      strat = greedy_low_degree_strategy(n);
    else if (strategy == "bfs")
      strat = bfs_frontier_strategy(n);
    else
      throw validation_error("unknown strategy: " + strategy);
    auto game = run_adversary_game(n, k, queries, strat);
    auto rep = verify_separation(game.state);
    py::dict d;
    d["avg_upper"] = rep.avg_upper;
    d["avg_lower"] = rep.avg_lower;
    d["ratio"] = rep.ratio;
    d["fraction_upper_at_k_plus_1"] = rep.fraction_upper_at_k_plus_1;
    d["fraction_lower_at_half"] = rep.fraction_lower_at_half;
    d["agreement_on_E"] = rep.agreement_on_E;
    return d;
  }, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("strategy") = "random",
     py::arg("seed") = 0);

  m.def("small_alpha_adversary", [](int n, double eps) {
    long long want = static_cast<long long>(eps * n * (n - 1) / 2);
    std::vector<std::pair<int, int>> E;
    for (int a = 0; a < n && static_cast<long long>(E.size()) < want; ++a)
      for (int b = a + 1; b < n && static_cast<long long>(E.size()) < want; ++b)
        E.push_back({a, b});
    auto r = small_alpha_adversary(n, E, eps);
    return std::make_pair(r.ratio, r.formula);
  });

  m.def("metric_to_3regular_distortion", [](const FiniteMetric& mm, double eps) {
    return metric_to_3regular(mm, eps).distortion;
  });

  m.def("p_barycentric_check", &p_barycentric_check);
  m.def("p_barycentric_counterexample", [](double p, double eps) {
    auto ce = p_barycentric_counterexample(p, eps);
    py::dict d;
    d["eta"] = ce.eta;
    d["z"] = ce.z;
    d["lhs"] = ce.lhs;
    d["rhs"] = ce.rhs;
    return d;
  });
}
