#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "avgdist/adversary.hpp"
#include "avgdist/approximator.hpp"
#include "avgdist/cone.hpp"
#include "avgdist/embedding.hpp"
#include "avgdist/experiment.hpp"
#include "avgdist/graph.hpp"
#include "avgdist/hadamard.hpp"
#include "avgdist/poincare.hpp"
#include "avgdist/transform.hpp"
#include "avgdist/zigzag.hpp"
#include "json.hpp"

using namespace avgdist;
using nlohmann::json;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write: " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot read: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"average-distance approximators, adversaries, and expander tools"};
  app.require_subcommand(1);

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "generate a random regular graph");
  int gg_n = 16, gg_d = 3;
  uint64_t gg_seed = 0;
  std::string gg_out = "graph.txt";
  gen->add_option("--n", gg_n)->required();
  gen->add_option("--d", gg_d)->required();
  gen->add_option("--seed", gg_seed);
  gen->add_option("--out", gg_out);
  gen->callback([&] {
    write_regular_graph(gg_out, random_regular(gg_n, gg_d, gg_seed));
    std::cout << json{{"n", gg_n}, {"d", gg_d}, {"out", gg_out}}.dump() << "\n";
  });

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "normalized adjacency spectrum summary");
  std::string sp_graph;
  spec->add_option("--graph", sp_graph)->required();
  spec->callback([&] {
    auto g = read_regular_graph(sp_graph);
    auto s = normalized_spectrum(g);
    json j{{"lambda2", s.lambda2},
           {"lambda_n", s.lambda_n},
           {"gamma2", s.gamma2},
           {"bipartite", s.bipartite_flag}};
    if (std::isfinite(s.gamma2_plus))
      j["gamma2_plus"] = s.gamma2_plus;
    else
      j["gamma2_plus"] = "inf";
    std::cout << j.dump() << "\n";
  });

  // poincare
  auto* poin = app.add_subcommand("poincare", "Poincare constant estimate");
  std::string pc_graph, pc_target = "reals", pc_mode = "gamma";
  double pc_p = 2.0;
  long long pc_budget = 1000000;
  poin->add_option("--graph", pc_graph)->required();
  poin->add_option("--target", pc_target, "reals | 01 | metric csv path");
  poin->add_option("--p", pc_p);
  poin->add_option("--mode", pc_mode, "gamma | gamma+");
  poin->add_option("--budget", pc_budget);
  poin->callback([&] {
    auto g = read_regular_graph(pc_graph);
    GammaMode mode = pc_mode == "gamma+" ? GammaMode::GammaPlus : GammaMode::Gamma;
    json j;
    if (pc_target == "reals") {
      if (pc_p != 2.0) throw validation_error("exact real-target estimates require p = 2");
      auto e = poincare_real2(g, mode);
      j = {{"value", e.value}, {"kind", "exact-spectral"}};
    } else {
      FiniteMetric target;
      if (pc_target == "01") {
        target = FiniteMetric(2);
        target.set(0, 1, 1.0);
      } else {
        target = read_metric_csv_file(pc_target);
      }
      auto e = poincare_estimate(g, target, pc_p, mode, pc_budget);
      j = {{"value", e.value},
           {"kind", e.kind == PoincareEstimate::Enumerated ? "enumerated" : "search-lower-bound"},
           {"witness", e.witness_f}};
      if (!e.witness_g.empty()) j["witness_g"] = e.witness_g;
    }
    std::cout << j.dump() << "\n";
  });

  // zigzag
  auto* zz = app.add_subcommand("zigzag", "run the zigzag iteration from a config");
  std::string zz_config, zz_prefix = "zigzag";
  zz->add_option("--config", zz_config, "json: {H: path | {n,d,seed}, m0, j_max}")->required();
  zz->add_option("--out-prefix", zz_prefix);
  zz->callback([&] {
    auto cfg = json::parse(read_file(zz_config));
    IterationConfig ic;
    if (cfg.at("H").is_string()) {
      ic.H = read_regular_graph(cfg.at("H").get<std::string>());
    } else {
      auto h = cfg.at("H");
      ic.H = random_regular(h.at("n").get<int>(), h.at("d").get<int>(),
                            h.value("seed", uint64_t{0}));
    }
    ic.m0 = cfg.value("m0", 1);
    ic.j_max = cfg.value("j_max", 2);
    auto it = zigzag_iterate(ic);
    std::ostringstream csv;
    csv << "j,n,d,gamma2_plus\n";
    for (const auto& st : it.stages) {
      std::string path = zz_prefix + "-G" + std::to_string(st.j) + ".graph";
      write_regular_graph(path, st.graph);
      csv << st.j << ',' << st.graph.n << ',' << st.graph.d << ',';
      if (st.gamma2_plus) csv << *st.gamma2_plus;
      csv << "\n";
    }
    write_file(zz_prefix + "-spectral.csv", csv.str());
    std::cout << json{{"stages", it.stages.size()}, {"truncated", it.truncated}}.dump() << "\n";
  });

  // approx
  auto* ap = app.add_subcommand("approx", "universal approximator on a metric");
  std::string ap_expander, ap_metric, ap_points = "all";
  double ap_sigma = 0.0;
  ap->add_option("--expander", ap_expander)->required();
  ap->add_option("--metric", ap_metric)->required();
  ap->add_option("--points", ap_points, "comma list of indices or 'all'");
  ap->add_option("--sigma", ap_sigma, "override the 1/m default");
  ap->callback([&] {
    auto expander = read_regular_graph(ap_expander);
    auto metric = read_metric_csv_file(ap_metric);
    std::vector<int> points;
    if (ap_points == "all") {
      for (int i = 0; i < metric.n; ++i) points.push_back(i);
    } else {
      std::stringstream ss(ap_points);
      std::string cell;
      while (std::getline(ss, cell, ',')) points.push_back(std::stoi(cell));
    }
    QuerySet q = universal_query_set(expander, static_cast<int>(points.size()));
    if (ap_sigma > 0.0) q.sigma = ap_sigma;
    double estimate =
        estimate_average(q, [&](int a, int b) { return metric(points[a], points[b]); });
    auto rep = sandwich_check(q, metric, points);
    std::cout << json{{"estimate", estimate},
                      {"exact", rep.exact_average},
                      {"ratio", rep.upper_ratio},
                      {"lower_ok", rep.lower_ok},
                      {"pairs", q.pairs.size()},
                      {"collapsed", q.collapsed}}
                     .dump()
              << "\n";
  });

  // adversary
  auto* adv = app.add_subcommand("adversary", "adaptive lower-bound game");
  int adv_n = 100, adv_k = 1;
  long long adv_m = 1000;
  std::string adv_strategy = "random", adv_dump, adv_pairs_file;
  uint64_t adv_seed = 0;
  adv->add_option("--n", adv_n)->required();
  adv->add_option("--k", adv_k)->required();
  adv->add_option("--m", adv_m)->required();
  adv->add_option("--strategy", adv_strategy, "random | greedy | bfs | file");
  adv->add_option("--pairs-file", adv_pairs_file, "pair list for --strategy file");
  adv->add_option("--seed", adv_seed);
  adv->add_option("--dump", adv_dump, "prefix for metric csv dumps");
  adv->callback([&] {
    Strategy strat;
    if (adv_strategy == "random")
      strat = random_pairs_strategy(adv_n, adv_seed);
    else if (adv_strategy == "greedy")
      strat = greedy_low_degree_strategy(adv_n);
    else if (adv_strategy == "bfs")
      strat = bfs_frontier_strategy(adv_n);
    else if (adv_strategy == "file") {
      std::vector<std::pair<int, int>> pairs;
      std::istringstream in(read_file(adv_pairs_file));
      int a, b;
      while (in >> a >> b) pairs.push_back({a, b});
      strat = fixed_pairs_strategy(std::move(pairs));
    } else {
      throw validation_error("unknown strategy: " + adv_strategy);
    }
    auto game = run_adversary_game(adv_n, adv_k, adv_m, strat);
    FiniteMetric upper = game.state.finalize_upper();
    auto lower = game.state.finalize_lower();
    auto rep = separation_report(game.state, upper, lower);
    if (!adv_dump.empty()) {
      write_metric_csv_file(adv_dump + "-upper.csv", upper);
      write_metric_csv_file(adv_dump + "-lower.csv", lower.metric);
    }
    std::cout << json{{"avg_upper", rep.avg_upper},
                      {"avg_lower", rep.avg_lower},
                      {"ratio", rep.ratio},
                      {"fraction_upper_at_k_plus_1", rep.fraction_upper_at_k_plus_1},
                      {"fraction_lower_at_half", rep.fraction_lower_at_half},
                      {"agreement_on_E", rep.agreement_on_E},
                      {"lower_feasible", rep.lower_feasible},
                      {"lower_structure_violations", rep.lower_structure_violations}}
                     .dump()
              << "\n";
  });

  // embed
  auto* emb = app.add_subcommand("embed", "embed a metric into a 3-regular graph");
  std::string em_metric, em_out = "embedded.graph";
  double em_eps = 0.5;
  emb->add_option("--metric", em_metric)->required();
  emb->add_option("--eps", em_eps)->required();
  emb->add_option("--out", em_out);
  emb->callback([&] {
    auto m = read_metric_csv_file(em_metric);
    auto res = metric_to_3regular(m, em_eps);
    write_regular_graph(em_out, res.graph);
    std::cout << json{{"distortion", res.distortion},
                      {"vertices", res.graph.n},
                      {"padded", res.padded},
                      {"map", res.map},
                      {"out", em_out}}
                     .dump()
              << "\n";
  });

  // check
  auto* chk = app.add_subcommand("check", "numeric inequality suite");
  chk->callback([&] {
    Rng rng(7);
    json results;
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok) {
      results[name] = ok ? "pass" : "fail";
      all_ok = all_ok && ok;
    };
    auto rand_points = [&](int count, int dim) {
      std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
      for (auto& p : pts)
        for (double& c : p) c = rng.real() * 2.0 - 1.0;
      return pts;
    };
    {
      bool ok = true;
      for (int trial = 0; trial < 200 && ok; ++trial) {
        auto pts = rand_points(3, 3);
        ok = cat0_comparison_check(pts[0], pts[1], pts[2], {0.1, 0.25, 0.5, 0.75, 0.9});
      }
      record("cat0_comparison", ok);
    }
    {
      bool ok = true;
      for (int trial = 0; trial < 200 && ok; ++trial) {
        auto pts = rand_points(6, 3);
        std::vector<double> w(6, 1.0 / 6.0);
        ok = std::abs(two_barycentric_check(pts, w, rand_points(1, 3)[0])) <= kMarginTol;
      }
      record("two_barycentric", ok);
    }
    {
      bool ok = true;
      for (double p : {2.0, 2.5, 3.0, 4.0})
        for (int trial = 0; trial < 100 && ok; ++trial) {
          auto pts = rand_points(6, 3);
          std::vector<double> w(6, 1.0 / 6.0);
          ok = p_barycentric_check(pts, w, rand_points(1, 3)[0], p) >= -kMarginTol;
        }
      record("p_barycentric", ok);
    }
    {
      bool ok = true;
      for (double p : {1.0, 1.5}) {
        auto ce = p_barycentric_counterexample(p, 1.0);
        ok = ok && ce.lhs < ce.rhs;
      }
      record("p_barycentric_counterexample", ok);
    }
    std::cout << json{{"results", results}, {"ok", all_ok}}.dump() << "\n";
    if (!all_ok) throw internal_error("inequality suite failed");
  });

  // report
  auto* rep = app.add_subcommand("report", "render a ratio chart from a results csv");
  std::string rp_in, rp_out = "chart.svg";
  rep->add_option("--in", rp_in)->required();
  rep->add_option("--out", rp_out);
  rep->callback([&] {
    write_file(rp_out, render_ratio_chart_svg(read_file(rp_in)));
    std::cout << json{{"out", rp_out}}.dump() << "\n";
  });

  // suite
  auto* su = app.add_subcommand("suite", "run an experiment config to a results csv");
  std::string su_config, su_out = "results.csv";
  su->add_option("--config", su_config)->required();
  su->add_option("--out", su_out);
  su->callback([&] {
    auto res = experiment_suite(read_file(su_config));
    write_file(su_out, res.csv);
    write_file(su_out + ".schema.json", res.schema_json);
    std::cout << json{{"out", su_out}}.dump() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;  // usage error
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
