#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hiercast/ingest.hpp"

namespace hiercast {

struct LongRecord {
  int row = 0;  // panel row
  int day = 0;  // 1-based
  double sales = 0.0;
};

// Lossless wide-to-long pivot, ordered by panel row then day.
std::vector<LongRecord> wide_to_long(const SalesPanel& panel);

// Inverse of wide_to_long for round-trip checks. Records may arrive in any
// order; missing cells throw CoverageError.
std::vector<std::vector<double>> long_to_wide(const std::vector<LongRecord>& records,
                                              int num_rows, int num_days);

struct FeatureConfig {
  std::vector<int> lags = {7, 14, 28};
  std::vector<int> windows = {7, 28};
  bool use_calendar = true;   // weekday, month, event, snap of the target day
  bool use_price = true;      // sell price of the target day, absent when unknown
  bool horizon_as_feature = true;
  int horizon = 28;
};

// Supervised samples. One row per (series, base day t, horizon h); features
// use only days <= t plus target-day calendar fields, which are known in
// advance. NaN encodes an absent feature value and an absent label.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<double> values;  // row-major, num_rows x names.size()
  std::vector<double> labels;
  std::vector<int> series_row;
  std::vector<int> base_day;
  std::vector<int> target_day;

  std::size_t num_rows() const { return labels.size(); }
  std::size_t num_cols() const { return names.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * names.size() + c]; }
};

// Column labels for the configured features. `with_flag` appends the
// strength-group flag column the pipeline sets per series.
std::vector<std::string> feature_names(const FeatureConfig& config, bool with_flag);

// Rows for a single horizon h over base days t = 1..D. Labels are the panel
// values at t+h, absent once t+h exceeds D. `calendar` supplies target-day
// fields and must cover every referenced day; pass an extended calendar when
// forecasting past the panel. `flags`, when non-empty, holds one group-flag
// value per panel row.
FeatureTable make_features(const SalesPanel& panel, const Calendar& calendar,
                           const std::vector<int>& series_rows, const FeatureConfig& config,
                           int h, const std::vector<double>& flags = {});

// Keeps rows with t <= T - h (labels never look past day T). Throws DataError
// when nothing survives.
FeatureTable training_matrix(const FeatureTable& table, int train_end);

// All horizons 1..config.horizon concatenated and filtered to t <= T - h,
// ordered by (series, t, h). This is the training input for the
// horizon-as-feature mode.
FeatureTable build_training_table(const SalesPanel& panel, const Calendar& calendar,
                                  const std::vector<int>& series_rows,
                                  const FeatureConfig& config, int train_end,
                                  const std::vector<double>& flags = {});

// One unlabeled row per (series, h), base day T, target day T+h.
FeatureTable prediction_rows(const SalesPanel& panel, const Calendar& calendar,
                             const std::vector<int>& series_rows, const FeatureConfig& config,
                             int train_end, const std::vector<double>& flags = {});

void write_feature_table(const FeatureTable& table, const SalesPanel& panel,
                         const std::string& path);

}  // namespace hiercast
