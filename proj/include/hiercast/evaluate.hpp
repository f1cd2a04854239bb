#pragma once

#include <array>
#include <string>
#include <vector>

#include "hiercast/ingest.hpp"
#include "hiercast/series_key.hpp"

namespace hiercast {

// excluded marks a constant-training series whose forecast is imperfect; the
// scaled error is undefined there and the series drops out of the weighted
// sum (weights renormalized over the rest).
struct RmsseResult {
  double value = 0.0;
  bool excluded = false;
};

RmsseResult rmsse_guarded(const std::vector<double>& train, const std::vector<double>& actual,
                          const std::vector<double>& forecast);

// Plain formula value. Throws DomainError on the excluded degenerate case.
double rmsse(const std::vector<double>& train, const std::vector<double>& actual,
             const std::vector<double>& forecast);

struct SeriesScore {
  SeriesKey key;
  double weight = 0.0;  // original normalized weight, sums to 1 over all series
  double rmsse = 0.0;
  bool excluded = false;
  double contribution = 0.0;  // renormalized weight x rmsse; 0 when excluded
};

struct MetricReport {
  double wrmsse = 0.0;
  std::array<double, kNumLevels> level_wrmsse{};  // contribution sub-sums
  std::vector<SeriesScore> per_series;
  bool revenue_weighted = false;
  std::vector<std::string> warnings;
};

// Last-`window`-day weights over every hierarchy series, normalized jointly
// to sum to 1. Revenue (units x price) when the panel has prices, unit sales
// otherwise. An all-zero window degrades to uniform weights with a warning.
std::map<SeriesKey, double> compute_weights(const SalesPanel& panel, int train_end, int window,
                                            bool* revenue_weighted = nullptr,
                                            std::vector<std::string>* warnings = nullptr);

// Full-hierarchy WRMSSE. The panel must cover days 1..train_end+h; training
// vectors are days 1..train_end and actuals the h days after. `forecasts`
// holds one h-vector per panel row; aggregate forecasts are sums of the
// bottom rows, never forecast independently.
MetricReport wrmsse_report(const SalesPanel& panel, int train_end,
                           const std::vector<std::vector<double>>& forecasts,
                           int weight_window = 28);

// CSV `series_id,level,weight,rmsse,contribution` (rmsse empty for excluded
// series) followed by a `WRMSSE=<value>` summary line; JSON twin carries the
// same fields.
void write_report_csv(const MetricReport& report, const std::string& path);
void write_report_json(const MetricReport& report, const std::string& path);

}  // namespace hiercast
