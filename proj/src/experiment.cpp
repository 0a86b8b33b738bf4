#include "avgdist/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "avgdist/adversary.hpp"
#include "avgdist/approximator.hpp"
#include "avgdist/graph.hpp"
#include "json.hpp"

namespace avgdist {

std::string cache_dir() {
  const char* v = std::getenv("AVGDIST_CACHE_DIR");
  return v ? std::string(v) : std::string();
}

namespace {

RegularGraph cached_random_regular(int n, int d, uint64_t seed) {
  std::string dir = cache_dir();
  if (dir.empty()) return random_regular(n, d, seed);
  std::filesystem::create_directories(dir);
  std::string path = dir + "/rr-" + std::to_string(n) + "-" + std::to_string(d) + "-" +
                     std::to_string(seed) + ".graph";
  if (std::filesystem::exists(path)) return read_regular_graph(path);
  RegularGraph g = random_regular(n, d, seed);
  write_regular_graph(path, g);
  return g;
}

const std::vector<std::pair<std::string, std::string>> kColumns = {
    {"experiment", "experiment name"},
    {"seed", "seed of this run"},
    {"n", "point count"},
    {"k", "adversary weight range parameter"},
    {"m", "number of queries"},
    {"exponent", "query exponent e with m = n^e"},
    {"strategy", "query strategy"},
    {"eps", "query density for the small-alpha adversary"},
    {"N", "host/expander vertex count"},
    {"ratio", "avg_upper / avg_lower (or estimate ratio)"},
    {"avg_upper", "average distance of the upper metric"},
    {"avg_lower", "average distance of the lower metric"},
    {"fraction_upper", "fraction of ordered pairs with upper = k+1"},
    {"fraction_lower", "fraction of ordered pairs with lower = 1/2"},
    {"agreement", "1 when both metrics agree with the answers on E"},
    {"estimate", "approximator output sigma * sum"},
    {"exact", "exact average distance"},
    {"upper_ratio", "exact average / per-pair mean"},
    {"lower_ok", "1 when the sandwich lower bound held"},
    {"error", "failure message when the run failed"},
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

Strategy make_strategy(const std::string& name, int n, uint64_t seed) {
  if (name == "random") return random_pairs_strategy(n, seed);
  if (name == "greedy") return greedy_low_degree_strategy(n);
  if (name == "bfs") return bfs_frontier_strategy(n);
  throw validation_error("unknown strategy: " + name);
}

}  // namespace

SuiteResult experiment_suite(const std::string& config_json) {
  auto cfg = nlohmann::json::parse(config_json);
  std::ostringstream csv;
  for (size_t c = 0; c < kColumns.size(); ++c) csv << (c ? "," : "") << kColumns[c].first;
  csv << "\n";

  auto experiments = cfg.value("experiments", nlohmann::json::array());
  for (const auto& exp : experiments) {
    std::string name = exp.at("experiment").get<std::string>();
    auto params = exp.value("params", nlohmann::json::object());
    for (const auto& seed_v : exp.value("seeds", nlohmann::json::array({0}))) {
      uint64_t seed = seed_v.get<uint64_t>();
      std::map<std::string, std::string> row;
      row["experiment"] = name;
      row["seed"] = std::to_string(seed);
      try {
        if (name == "adversary") {
          int n = params.at("n").get<int>();
          int k = params.at("k").get<int>();
          long long m;
          if (params.contains("exponent")) {
            double e = params.at("exponent").get<double>();
            m = static_cast<long long>(std::floor(std::pow(n, e)));
            row["exponent"] = fmt(e);
          } else {
            m = params.at("m").get<long long>();
            row["exponent"] = fmt(std::log(static_cast<double>(m)) / std::log(n));
          }
          std::string strat = params.value("strategy", std::string("random"));
          auto game = run_adversary_game(n, k, m, make_strategy(strat, n, seed));
          auto rep = verify_separation(game.state);
          row["n"] = std::to_string(n);
          row["k"] = std::to_string(k);
          row["m"] = std::to_string(m);
          row["strategy"] = strat;
          row["ratio"] = fmt(rep.ratio);
          row["avg_upper"] = fmt(rep.avg_upper);
          row["avg_lower"] = fmt(rep.avg_lower);
          row["fraction_upper"] = fmt(rep.fraction_upper_at_k_plus_1);
          row["fraction_lower"] = fmt(rep.fraction_lower_at_half);
          row["agreement"] = rep.agreement_on_E ? "1" : "0";
        } else if (name == "small-alpha") {
          int n = params.at("n").get<int>();
          double eps = params.at("eps").get<double>();
          long long want = static_cast<long long>(std::floor(eps * n * (n - 1.0) / 2.0));
          std::vector<std::pair<int, int>> E;
          for (int a = 0; a < n && static_cast<long long>(E.size()) < want; ++a)
            for (int b = a + 1; b < n && static_cast<long long>(E.size()) < want; ++b)
              E.push_back({a, b});
          auto res = small_alpha_adversary(n, E, eps);
          row["n"] = std::to_string(n);
          row["eps"] = fmt(eps);
          row["m"] = std::to_string(E.size());
          row["ratio"] = fmt(res.ratio);
          row["avg_upper"] = fmt(average_distance(res.upper));
          row["avg_lower"] = fmt(average_distance(res.lower));
        } else if (name == "approx") {
          int N = params.at("N").get<int>();
          int n = params.at("n").get<int>();
          int d = params.value("d", 3);
          int expander_n = params.value("expander_n", 2 * n);
          RegularGraph host = cached_random_regular(N, d, seed);
          RegularGraph expander = cached_random_regular(expander_n, 3, seed + 1);
          FiniteMetric hostm = shortest_path_metric(host.to_weighted());
          Rng rng(seed + 2);
          std::vector<int> points;
          std::vector<char> used(N, 0);
          while (static_cast<int>(points.size()) < n) {
            int v = rng.index(N);
            if (!used[v]) {
              used[v] = 1;
              points.push_back(v);
            }
          }
          QuerySet q = universal_query_set(expander, n);
          auto rep = sandwich_check(q, hostm, points);
          double estimate = estimate_average(
              q, [&](int a, int b) { return hostm(points[a], points[b]); });
          row["N"] = std::to_string(N);
          row["n"] = std::to_string(n);
          row["m"] = std::to_string(q.pairs.size());
          row["estimate"] = fmt(estimate);
          row["exact"] = fmt(rep.exact_average);
          row["upper_ratio"] = fmt(rep.upper_ratio);
          row["lower_ok"] = rep.lower_ok ? "1" : "0";
          row["ratio"] = fmt(rep.upper_ratio);
        } else {
          throw validation_error("unknown experiment: " + name);
        }
      } catch (const std::exception& e) {
        row["error"] = e.what();
      }
      for (size_t c = 0; c < kColumns.size(); ++c) {
        if (c) csv << ",";
        auto it = row.find(kColumns[c].first);
        if (it != row.end()) csv << it->second;
      }
      csv << "\n";
    }
  }

  nlohmann::json schema;
  for (const auto& [name, desc] : kColumns) schema["columns"][name] = desc;
  SuiteResult out;
  out.csv = csv.str();
  out.schema_json = schema.dump(2);
  return out;
}

namespace {

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::vector<std::map<std::string, std::string>> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return rows;
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::map<std::string, std::string> row;
    std::stringstream ss(line);
    std::string cell;
    size_t c = 0;
    while (std::getline(ss, cell, ',') && c < header.size()) row[header[c++]] = cell;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string render_ratio_chart_svg(const std::string& csv_text) {
  auto rows = parse_csv(csv_text);
  const double W = 720, H = 480, ml = 60, mr = 20, mt = 30, mb = 50;
  const double e_hi = 2.0, e_lo = 1.0;  // exponent axis, decreasing rightward
  double y_max = 10.0;
  for (const auto& r : rows) {
    auto it = r.find("ratio");
    if (it != r.end() && !it->second.empty()) y_max = std::max(y_max, std::stod(it->second) + 1.0);
  }
  auto X = [&](double e) { return ml + (e_hi - e) / (e_hi - e_lo) * (W - ml - mr); };
  auto Y = [&](double v) { return H - mb - v / y_max * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
      << "' stroke='black'/>\n";
  svg << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
  for (int k = 1; k <= 8; ++k) {
    double e = 1.0 + 1.0 / k;
    svg << "<text x='" << X(e) << "' y='" << H - mb + 18
        << "' font-size='11' text-anchor='middle'>n^" << (1.0 + 1.0 / k) << "</text>\n";
  }
  for (double v = 0; v <= y_max; v += 2)
    svg << "<text x='" << ml - 8 << "' y='" << Y(v) + 4
        << "' font-size='11' text-anchor='end'>" << v << "</text>\n";
  svg << "<text x='" << (W / 2) << "' y='" << H - 12
      << "' font-size='12' text-anchor='middle'>query budget (exponent, decreasing)</text>\n";
  svg << "<text x='16' y='" << (H / 2)
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 16 " << (H / 2)
      << ")'>approximation factor</text>\n";

  // step lower bound: queries o(n^{1+1/k}) force factor >= 2(k+1)
  for (int k = 1; k <= 16; ++k) {
    double e_right = 1.0 + 1.0 / (k + 1);
    double e_left = 1.0 + 1.0 / k;
    double bound = 2.0 * (k + 1);
    if (bound > y_max) break;
    svg << "<line x1='" << X(e_left) << "' y1='" << Y(bound) << "' x2='" << X(e_right)
        << "' y2='" << Y(bound) << "' stroke='red' stroke-width='2'/>\n";
    if (k > 1)
      svg << "<line x1='" << X(e_left) << "' y1='" << Y(2.0 * k) << "' x2='" << X(e_left)
          << "' y2='" << Y(bound) << "' stroke='red' stroke-width='1' stroke-dasharray='4'/>\n";
  }

  for (const auto& r : rows) {
    auto ei = r.find("exponent");
    auto ri = r.find("ratio");
    if (ei == r.end() || ri == r.end() || ei->second.empty() || ri->second.empty()) continue;
    double e = std::stod(ei->second), v = std::stod(ri->second);
    if (e < e_lo || e > e_hi) continue;
    svg << "<circle cx='" << X(e) << "' cy='" << Y(v) << "' r='4' fill='blue'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace avgdist
