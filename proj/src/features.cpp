#include "hiercast/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "features";
constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

void validate_config(const FeatureConfig& config, int num_days) {
  for (int lag : config.lags)
    if (lag < 1 || lag > num_days)
      throw ConfigError(kModule, "lag " + std::to_string(lag) + " outside [1, " +
                                     std::to_string(num_days) + "]");
  for (int w : config.windows)
    if (w < 1 || w > num_days)
      throw ConfigError(kModule, "window " + std::to_string(w) + " outside [1, " +
                                     std::to_string(num_days) + "]");
  if (config.horizon < 1) throw ConfigError(kModule, "horizon must be >= 1");
}

// Emits the feature vector for one sample directly into `out`.
void fill_row(const SalesPanel& panel, const Calendar& calendar, int row, int t, int h,
              const std::vector<double>& row_prices, const FeatureConfig& config,
              const std::vector<double>& flags, double* out) {
  const std::vector<double>& y = panel.values[static_cast<std::size_t>(row)];
  std::size_t c = 0;
  for (int lag : config.lags)
    out[c++] = t - lag >= 1 ? y[static_cast<std::size_t>(t - lag - 1)] : kAbsent;
  for (int w : config.windows) {
    if (t - w + 1 >= 1) {
      double acc = 0.0;
      for (int u = t - w + 1; u <= t; ++u) acc += y[static_cast<std::size_t>(u - 1)];
      out[c++] = acc / w;
    } else {
      out[c++] = kAbsent;
    }
  }
  const int target = t + h;
  if (config.use_calendar) {
    // Target days past the calendar can only belong to unlabeled rows; their
    // calendar fields degrade to absent. prediction_rows checks coverage up
    // front so real forecasts never hit this branch.
    if (target > calendar.size()) {
      out[c++] = kAbsent;
      out[c++] = kAbsent;
      out[c++] = kAbsent;
      out[c++] = kAbsent;
    } else {
      const CalendarDay& day = calendar.days[static_cast<std::size_t>(target - 1)];
      out[c++] = day.weekday;
      out[c++] = day.month;
      out[c++] = day.event_name.empty() ? 0.0 : 1.0;
      out[c++] = calendar.snap_flag(panel.series[static_cast<std::size_t>(row)].state_id, target)
                     ? 1.0
                     : 0.0;
    }
  }
  if (config.use_price)
    out[c++] = target <= static_cast<int>(row_prices.size())
                   ? row_prices[static_cast<std::size_t>(target - 1)]
                   : kAbsent;
  if (!flags.empty()) out[c++] = flags[static_cast<std::size_t>(row)];
  if (config.horizon_as_feature) out[c++] = h;
}

// Per-row target-day prices resolved through `calendar` (which may extend past
// the panel's own calendar).
std::vector<double> target_prices(const SalesPanel& panel, const Calendar& calendar, int row) {
  std::vector<double> out(static_cast<std::size_t>(calendar.size()), kAbsent);
  const SeriesInfo& info = panel.series[static_cast<std::size_t>(row)];
  for (int t = 1; t <= calendar.size(); ++t) {
    int wk = calendar.days[static_cast<std::size_t>(t - 1)].week_id;
    if (wk < 0) continue;
    if (auto p = panel.prices.price(info.store_id, info.item_id, wk))
      out[static_cast<std::size_t>(t - 1)] = *p;
  }
  return out;
}
}  // namespace

std::vector<LongRecord> wide_to_long(const SalesPanel& panel) {
  std::vector<LongRecord> out;
  out.reserve(static_cast<std::size_t>(panel.num_series()) *
              static_cast<std::size_t>(panel.num_days()));
  for (int i = 0; i < panel.num_series(); ++i)
    for (int t = 1; t <= panel.num_days(); ++t)
      out.push_back({i, t, panel.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(t - 1)]});
  return out;
}

std::vector<std::vector<double>> long_to_wide(const std::vector<LongRecord>& records,
                                              int num_rows, int num_days) {
  std::vector<std::vector<double>> wide(
      static_cast<std::size_t>(num_rows),
      std::vector<double>(static_cast<std::size_t>(num_days), kAbsent));
  for (const LongRecord& r : records) {
    if (r.row < 0 || r.row >= num_rows || r.day < 1 || r.day > num_days)
      throw ShapeError(kModule, "record outside the panel shape");
    wide[static_cast<std::size_t>(r.row)][static_cast<std::size_t>(r.day - 1)] = r.sales;
  }
  for (const auto& row : wide)
    for (double v : row)
      if (std::isnan(v)) throw CoverageError(kModule, "long records do not cover the panel");
  return wide;
}

std::vector<std::string> feature_names(const FeatureConfig& config, bool with_flag) {
  std::vector<std::string> names;
  for (int lag : config.lags) names.push_back("lag_" + std::to_string(lag));
  for (int w : config.windows) names.push_back("rollmean_" + std::to_string(w));
  if (config.use_calendar) {
    names.push_back("weekday");
    names.push_back("month");
    names.push_back("event");
    names.push_back("snap");
  }
  if (config.use_price) names.push_back("price");
  if (with_flag) names.push_back("group_flag");
  if (config.horizon_as_feature) names.push_back("horizon");
  return names;
}

FeatureTable make_features(const SalesPanel& panel, const Calendar& calendar,
                           const std::vector<int>& series_rows, const FeatureConfig& config,
                           int h, const std::vector<double>& flags) {
  validate_config(config, panel.num_days());
  if (h < 1 || h > config.horizon) throw ConfigError(kModule, "h outside [1, horizon]");
  FeatureTable table;
  table.names = feature_names(config, !flags.empty());
  const std::size_t k = table.names.size();
  const int D = panel.num_days();
  table.values.reserve(static_cast<std::size_t>(D) * series_rows.size() * k);
  for (int row : series_rows) {
    const std::vector<double> prices =
        config.use_price ? target_prices(panel, calendar, row) : std::vector<double>{};
    for (int t = 1; t <= D; ++t) {
      table.series_row.push_back(row);
      table.base_day.push_back(t);
      table.target_day.push_back(t + h);
      table.labels.push_back(
          t + h <= D ? panel.values[static_cast<std::size_t>(row)][static_cast<std::size_t>(t + h - 1)]
                     : kAbsent);
      table.values.resize(table.values.size() + k);
      fill_row(panel, calendar, row, t, h, prices, config, flags,
               table.values.data() + table.values.size() - k);
    }
  }
  return table;
}

FeatureTable training_matrix(const FeatureTable& table, int train_end) {
  FeatureTable out;
  out.names = table.names;
  const std::size_t k = table.names.size();
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const int h = table.target_day[r] - table.base_day[r];
    if (table.base_day[r] > train_end - h) continue;
    if (std::isnan(table.labels[r])) continue;
    out.series_row.push_back(table.series_row[r]);
    out.base_day.push_back(table.base_day[r]);
    out.target_day.push_back(table.target_day[r]);
    out.labels.push_back(table.labels[r]);
    out.values.insert(out.values.end(), table.values.begin() + static_cast<std::ptrdiff_t>(r * k),
                      table.values.begin() + static_cast<std::ptrdiff_t>((r + 1) * k));
  }
  if (out.labels.empty())
    throw DataError(kModule, "no training rows survive train_end " + std::to_string(train_end));
  return out;
}

FeatureTable build_training_table(const SalesPanel& panel, const Calendar& calendar,
                                  const std::vector<int>& series_rows,
                                  const FeatureConfig& config, int train_end,
                                  const std::vector<double>& flags) {
  validate_config(config, panel.num_days());
  if (train_end > panel.num_days())
    throw ConfigError(kModule, "train_end past the panel's last day");
  FeatureTable table;
  table.names = feature_names(config, !flags.empty());
  const std::size_t k = table.names.size();
  for (int row : series_rows) {
    const std::vector<double> prices =
        config.use_price ? target_prices(panel, calendar, row) : std::vector<double>{};
    for (int t = 1; t < train_end; ++t) {
      for (int h = 1; h <= config.horizon && t + h <= train_end; ++h) {
        table.series_row.push_back(row);
        table.base_day.push_back(t);
        table.target_day.push_back(t + h);
        table.labels.push_back(panel.values[static_cast<std::size_t>(row)]
                                           [static_cast<std::size_t>(t + h - 1)]);
        table.values.resize(table.values.size() + k);
        fill_row(panel, calendar, row, t, h, prices, config, flags,
                 table.values.data() + table.values.size() - k);
      }
    }
  }
  if (table.labels.empty())
    throw DataError(kModule, "no training rows for train_end " + std::to_string(train_end));
  return table;
}

FeatureTable prediction_rows(const SalesPanel& panel, const Calendar& calendar,
                             const std::vector<int>& series_rows, const FeatureConfig& config,
                             int train_end, const std::vector<double>& flags) {
  validate_config(config, panel.num_days());
  if (config.use_calendar && calendar.size() < train_end + config.horizon)
    throw CoverageError(kModule, "calendar ends at day " + std::to_string(calendar.size()) +
                                     " but forecasts reach day " +
                                     std::to_string(train_end + config.horizon));
  FeatureTable table;
  table.names = feature_names(config, !flags.empty());
  const std::size_t k = table.names.size();
  for (int row : series_rows) {
    const std::vector<double> prices =
        config.use_price ? target_prices(panel, calendar, row) : std::vector<double>{};
    for (int h = 1; h <= config.horizon; ++h) {
      table.series_row.push_back(row);
      table.base_day.push_back(train_end);
      table.target_day.push_back(train_end + h);
      table.labels.push_back(kAbsent);
      table.values.resize(table.values.size() + k);
      fill_row(panel, calendar, row, train_end, h, prices, config, flags,
               table.values.data() + table.values.size() - k);
    }
  }
  return table;
}

void write_feature_table(const FeatureTable& table, const SalesPanel& panel,
                         const std::string& path) {
  csv::Writer w(path, kModule);
  std::vector<std::string> header = {"series_id", "day", "horizon"};
  header.insert(header.end(), table.names.begin(), table.names.end());
  header.push_back("label");
  w.row(header);
  const std::size_t k = table.names.size();
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    std::vector<std::string> row;
    row.push_back(panel.series[static_cast<std::size_t>(table.series_row[r])].id);
    row.push_back(std::to_string(table.base_day[r]));
    row.push_back(std::to_string(table.target_day[r] - table.base_day[r]));
    for (std::size_t c = 0; c < k; ++c) row.push_back(fmt_double(table.at(r, c)));
    row.push_back(fmt_double(table.labels[r]));
    w.row(row);
  }
}

}  // namespace hiercast
