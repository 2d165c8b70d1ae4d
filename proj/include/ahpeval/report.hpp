#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahpeval/dataset.hpp"
#include "ahpeval/judgment.hpp"
#include "ahpeval/metrics.hpp"

namespace ahpeval {

struct HistogramBin {
  double low = 0, high = 0;
  std::size_t count = 0;
};

// Equal-width bins over the observed range; a degenerate range yields a
// single bin holding everything.
std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins);

// One bin per integer level in [min_level, max_level].
std::vector<HistogramBin> level_histogram(const std::vector<double>& values,
                                          int min_level, int max_level);

std::string histogram_csv(const std::vector<HistogramBin>& bins);
std::string ablation_csv(const std::vector<AblationRow>& rows);

struct ReportInputs {
  std::string method;
  std::string question;
  std::map<std::string, double> scores_by_id;
  std::vector<std::string> ranking;  // best first
  std::optional<MetricReport> metrics;
  std::optional<std::map<JudgmentScale, double>> judgment_distribution;
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
  nlohmann::json config = nlohmann::json::object();  // effective run config
  std::size_t histogram_bins = 10;
  std::optional<std::pair<int, int>> level_range;  // level-valued methods
};

nlohmann::json build_report(const ReportInputs& inputs);

// Writes <method>_report.json and <method>_histogram.csv under out_dir.
// Reports are byte-stable across identical runs except the timestamp
// field.
void export_report(const ReportInputs& inputs, const std::filesystem::path& out_dir);

}  // namespace ahpeval
