#pragma once

#include <string>
#include <vector>

namespace avgdist {

struct SuiteResult {
  std::string csv;
  std::string schema_json;
};

/// Runs the experiments listed in the config JSON ({"experiments": [{
/// "experiment": name, "params": {...}, "seeds": [...]}]}); one CSV row per
/// (experiment, seed), byte-identical for identical inputs. Per-row failures
/// are recorded in the error column and the suite continues.
SuiteResult experiment_suite(const std::string& config_json);

/// Query-budget exponent vs approximation-factor chart: the 2(k+1) step
/// lower-bound curve plus measured points from CSV rows with `exponent` and
/// `ratio` columns. Exponent axis decreases left to right.
std::string render_ratio_chart_svg(const std::string& csv_text);

/// Directory for cached graph artifacts (env AVGDIST_CACHE_DIR), empty when
/// unset.
std::string cache_dir();

}  // namespace avgdist
