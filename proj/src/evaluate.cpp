#include "hiercast/evaluate.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "evaluate";

double squared_error_mean(const std::vector<double>& actual, const std::vector<double>& forecast) {
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i)
    acc += (actual[i] - forecast[i]) * (actual[i] - forecast[i]);
  return acc / static_cast<double>(actual.size());
}

double naive_error_mean(const std::vector<double>& train) {
  double acc = 0.0;
  for (std::size_t t = 1; t < train.size(); ++t)
    acc += (train[t] - train[t - 1]) * (train[t] - train[t - 1]);
  return acc / static_cast<double>(train.size() - 1);
}
}  // namespace

RmsseResult rmsse_guarded(const std::vector<double>& train, const std::vector<double>& actual,
                          const std::vector<double>& forecast) {
  if (train.size() < 2) throw LengthError(kModule, "training series needs at least 2 days");
  if (actual.empty() || actual.size() != forecast.size())
    throw ShapeError(kModule, "actual and forecast lengths differ or are empty");
  const double num = squared_error_mean(actual, forecast);
  const double denom = naive_error_mean(train);
  if (denom == 0.0) {
    if (num == 0.0) return {0.0, false};
    return {0.0, true};
  }
  return {std::sqrt(num / denom), false};
}

double rmsse(const std::vector<double>& train, const std::vector<double>& actual,
             const std::vector<double>& forecast) {
  const RmsseResult r = rmsse_guarded(train, actual, forecast);
  if (r.excluded)
    throw DomainError(kModule, "constant training series with imperfect forecast");
  return r.value;
}

std::map<SeriesKey, double> compute_weights(const SalesPanel& panel, int train_end, int window,
                                            bool* revenue_weighted,
                                            std::vector<std::string>* warnings) {
  if (window < 1) throw ConfigError(kModule, "weight window must be >= 1");
  if (train_end < window)
    throw LengthError(kModule, "train_end " + std::to_string(train_end) +
                                   " shorter than the weight window " + std::to_string(window));
  if (train_end > panel.num_days())
    throw LengthError(kModule, "train_end past the panel's last day");

  const bool use_revenue = !panel.prices.empty();
  if (revenue_weighted) *revenue_weighted = use_revenue;

  // Scalar window mass per bottom row, rolled up to every level. Revenue is
  // aggregated from the bottom so parents equal the sum of their children.
  std::map<SeriesKey, double> weights;
  for (int i = 0; i < panel.num_series(); ++i) {
    const std::vector<double>& y = panel.values[static_cast<std::size_t>(i)];
    double mass = 0.0;
    if (use_revenue) {
      const std::vector<double> prices = panel.day_prices(i);
      for (int t = train_end - window + 1; t <= train_end; ++t) {
        const double p = prices[static_cast<std::size_t>(t - 1)];
        if (!std::isnan(p)) mass += y[static_cast<std::size_t>(t - 1)] * p;
      }
    } else {
      for (int t = train_end - window + 1; t <= train_end; ++t)
        mass += y[static_cast<std::size_t>(t - 1)];
    }
    for (int lv = 0; lv < kNumLevels; ++lv)
      weights[SeriesKey::project(panel.series[static_cast<std::size_t>(i)],
                                 static_cast<Level>(lv))] += mass;
  }

  double total = 0.0;
  for (const auto& [key, w] : weights) total += w;
  if (total <= 0.0) {
    if (warnings)
      warnings->push_back("all-zero weight window; falling back to uniform weights");
    const double uniform = 1.0 / static_cast<double>(weights.size());
    for (auto& [key, w] : weights) w = uniform;
    return weights;
  }
  for (auto& [key, w] : weights) w /= total;
  return weights;
}

MetricReport wrmsse_report(const SalesPanel& panel, int train_end,
                           const std::vector<std::vector<double>>& forecasts,
                           int weight_window) {
  if (forecasts.size() != static_cast<std::size_t>(panel.num_series()))
    throw ShapeError(kModule, "one forecast vector per panel row required");
  if (forecasts.empty()) throw DataError(kModule, "empty forecast set");
  const int h = static_cast<int>(forecasts.front().size());
  if (h < 1) throw ShapeError(kModule, "empty forecast horizon");
  for (const auto& f : forecasts)
    if (static_cast<int>(f.size()) != h)
      throw ShapeError(kModule, "ragged forecast vectors");
  if (train_end + h > panel.num_days())
    throw CoverageError(kModule, "panel ends at day " + std::to_string(panel.num_days()) +
                                     " but evaluation needs day " + std::to_string(train_end + h));

  MetricReport report;
  const std::map<SeriesKey, double> weights =
      compute_weights(panel, train_end, weight_window, &report.revenue_weighted,
                      &report.warnings);
  const Hierarchy truth = build_hierarchy(panel);
  const Hierarchy forecast_h = aggregate_rows(panel.series, forecasts);

  // First pass collects raw scores, second pass renormalizes contributions
  // over the non-excluded weight mass.
  for (const auto& [key, series] : truth.series) {
    SeriesScore score;
    score.key = key;
    score.weight = weights.at(key);
    const std::vector<double> train(series.begin(), series.begin() + train_end);
    const std::vector<double> actual(series.begin() + train_end,
                                     series.begin() + train_end + h);
    const RmsseResult r = rmsse_guarded(train, actual, forecast_h.series.at(key));
    score.rmsse = r.value;
    score.excluded = r.excluded;
    if (r.excluded)
      report.warnings.push_back("excluded constant-training series " + key.id() +
                                " with imperfect forecast");
    report.per_series.push_back(std::move(score));
  }
  double included_mass = 0.0;
  for (const SeriesScore& s : report.per_series)
    if (!s.excluded) included_mass += s.weight;
  for (SeriesScore& s : report.per_series) {
    if (s.excluded || included_mass <= 0.0) continue;
    s.contribution = s.weight / included_mass * s.rmsse;
    report.wrmsse += s.contribution;
    report.level_wrmsse[static_cast<std::size_t>(s.key.level)] += s.contribution;
  }
  return report;
}

void write_report_csv(const MetricReport& report, const std::string& path) {
  csv::Writer w(path, kModule);
  w.row({"series_id", "level", "weight", "rmsse", "contribution"});
  for (const SeriesScore& s : report.per_series)
    w.row({s.key.id(), level_name(s.key.level), fmt_double(s.weight),
           s.excluded ? "" : fmt_double(s.rmsse), fmt_double(s.contribution)});
  w.raw_line("WRMSSE=" + fmt_double(report.wrmsse));
}

void write_report_json(const MetricReport& report, const std::string& path) {
  nlohmann::json j;
  j["wrmsse"] = report.wrmsse;
  j["revenue_weighted"] = report.revenue_weighted;
  j["warnings"] = report.warnings;
  nlohmann::json levels = nlohmann::json::object();
  for (int lv = 0; lv < kNumLevels; ++lv)
    levels[level_name(static_cast<Level>(lv))] = report.level_wrmsse[static_cast<std::size_t>(lv)];
  j["level_wrmsse"] = levels;
  nlohmann::json rows = nlohmann::json::array();
  for (const SeriesScore& s : report.per_series) {
    nlohmann::json r;
    r["series_id"] = s.key.id();
    r["level"] = level_name(s.key.level);
    r["weight"] = s.weight;
    if (s.excluded)
      r["rmsse"] = nullptr;
    else
      r["rmsse"] = s.rmsse;
    r["contribution"] = s.contribution;
    rows.push_back(std::move(r));
  }
  j["series"] = rows;
  std::ofstream out(path);
  if (!out) throw IoError(kModule, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace hiercast
