#include "ahpeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ahpeval/error.hpp"
#include "ahpeval/util.hpp"

namespace ahpeval {

using nlohmann::json;

std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins) {
  if (values.empty()) throw ValidationError("cannot histogram an empty score vector");
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return {{lo, hi, values.size()}};

  std::vector<HistogramBin> result(bins);
  double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    result[b].low = lo + static_cast<double>(b) * width;
    result[b].high = b + 1 == bins ? hi : lo + static_cast<double>(b + 1) * width;
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;  // the max lands in the last bin
    ++result[b].count;
  }
  return result;
}

std::vector<HistogramBin> level_histogram(const std::vector<double>& values,
                                          int min_level, int max_level) {
  if (values.empty()) throw ValidationError("cannot histogram an empty score vector");
  if (max_level < min_level) throw ValidationError("invalid level range");
  std::vector<HistogramBin> result;
  for (int level = min_level; level <= max_level; ++level) {
    HistogramBin bin{static_cast<double>(level), static_cast<double>(level), 0};
    for (double v : values)
      if (std::llround(v) == level) ++bin.count;
    result.push_back(bin);
  }
  return result;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::string csv = "bin_low,bin_high,count\n";
  for (const auto& bin : bins) {
    csv += format_number(bin.low) + "," + format_number(bin.high) + "," +
           std::to_string(bin.count) + "\n";
  }
  return csv;
}

std::string ablation_csv(const std::vector<AblationRow>& rows) {
  std::string csv = "subset_size,min,q1,mean,q3,max\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.subset_size) + "," + format_number(row.min) + "," +
           format_number(row.q1) + "," + format_number(row.mean) + "," +
           format_number(row.q3) + "," + format_number(row.max) + "\n";
  }
  return csv;
}

json build_report(const ReportInputs& inputs) {
  json scores = json::object();
  for (const auto& [id, score] : inputs.scores_by_id) scores[id] = score;

  json report = {{"method", inputs.method},
                 {"question", inputs.question},
                 {"scores", scores},
                 {"ranking", inputs.ranking},
                 {"backend_calls", inputs.backend_calls},
                 {"cache_hits", inputs.cache_hits},
                 {"config", inputs.config},
                 {"config_digest", hex_digest(inputs.config.dump())},
                 {"timestamp", iso8601_utc_now()}};

  if (inputs.metrics) {
    report["metrics"] = {{"ci", inputs.metrics->ci},
                         {"sci", inputs.metrics->sci},
                         {"sci_gap", inputs.metrics->sci_gap},
                         {"ci_concordant", inputs.metrics->ci_concordant},
                         {"ci_total", inputs.metrics->ci_total},
                         {"sci_concordant", inputs.metrics->sci_concordant},
                         {"sci_total", inputs.metrics->sci_total}};
  } else {
    report["metrics"] = nullptr;
  }

  if (inputs.judgment_distribution) {
    json dist = json::object();
    for (const auto& [scale, pct] : *inputs.judgment_distribution)
      dist[std::string(to_string(scale))] = pct;
    report["judgment_distribution"] = dist;
  } else {
    report["judgment_distribution"] = nullptr;
  }
  return report;
}

void export_report(const ReportInputs& inputs, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  std::filesystem::path report_path = out_dir / (inputs.method + "_report.json");
  std::ofstream report_out(report_path);
  if (!report_out) throw ValidationError("cannot write report to " + report_path.string());
  report_out << build_report(inputs).dump(2) << "\n";

  std::vector<double> values;
  values.reserve(inputs.scores_by_id.size());
  for (const auto& [id, score] : inputs.scores_by_id) values.push_back(score);
  std::vector<HistogramBin> bins =
      inputs.level_range
          ? level_histogram(values, inputs.level_range->first, inputs.level_range->second)
          : histogram(values, inputs.histogram_bins);

  std::filesystem::path csv_path = out_dir / (inputs.method + "_histogram.csv");
  std::ofstream csv_out(csv_path);
  if (!csv_out) throw ValidationError("cannot write histogram to " + csv_path.string());
  csv_out << histogram_csv(bins);
}

}  // namespace ahpeval
