#include "hiercast/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "hiercast/errors.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "decompose";

double population_variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}
}  // namespace

const char* group_name(SeriesGroup g) {
  return g == SeriesGroup::TrendType ? "trend" : "seasonality";
}

Components decompose(const std::vector<double>& series, int period,
                     const std::map<int, std::string>& holiday_labels) {
  if (period < 2) throw ValueError(kModule, "period must be >= 2");
  const int n = static_cast<int>(series.size());
  if (n < 2 * period)
    throw LengthError(kModule, "series length " + std::to_string(n) +
                                   " is shorter than 2 x period " + std::to_string(period));

  Components c;
  c.trend.assign(series.size(), 0.0);

  // Interior range [lo, hi] (0-based) where the centered average is defined.
  int lo, hi;
  if (period % 2 == 1) {
    const int half = period / 2;
    lo = half;
    hi = n - 1 - half;
    for (int t = lo; t <= hi; ++t) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) acc += series[static_cast<std::size_t>(t + k)];
      c.trend[static_cast<std::size_t>(t)] = acc / period;
    }
  } else {
    // 2 x period MA: half weights on the two outermost terms.
    const int half = period / 2;
    lo = half;
    hi = n - 1 - half;
    for (int t = lo; t <= hi; ++t) {
      double acc = 0.5 * (series[static_cast<std::size_t>(t - half)] +
                          series[static_cast<std::size_t>(t + half)]);
      for (int k = -half + 1; k <= half - 1; ++k) acc += series[static_cast<std::size_t>(t + k)];
      c.trend[static_cast<std::size_t>(t)] = acc / period;
    }
  }
  for (int t = 0; t < lo; ++t) c.trend[static_cast<std::size_t>(t)] = c.trend[static_cast<std::size_t>(lo)];
  for (int t = hi + 1; t < n; ++t) c.trend[static_cast<std::size_t>(t)] = c.trend[static_cast<std::size_t>(hi)];

  c.holiday.assign(series.size(), 0.0);
  std::map<std::string, std::pair<double, int>> label_acc;
  for (const auto& [day, label] : holiday_labels) {
    if (day < 1 || day > n) continue;
    auto& [sum, count] = label_acc[label];
    sum += series[static_cast<std::size_t>(day - 1)] - c.trend[static_cast<std::size_t>(day - 1)];
    ++count;
  }
  for (const auto& [day, label] : holiday_labels) {
    if (day < 1 || day > n) continue;
    const auto& [sum, count] = label_acc[label];
    c.holiday[static_cast<std::size_t>(day - 1)] = sum / count;
  }

  std::vector<double> pos_sum(static_cast<std::size_t>(period), 0.0);
  std::vector<int> pos_count(static_cast<std::size_t>(period), 0);
  for (int t = lo; t <= hi; ++t) {
    const double dev = series[static_cast<std::size_t>(t)] - c.trend[static_cast<std::size_t>(t)] -
                       c.holiday[static_cast<std::size_t>(t)];
    pos_sum[static_cast<std::size_t>(t % period)] += dev;
    ++pos_count[static_cast<std::size_t>(t % period)];
  }
  std::vector<double> pos_mean(static_cast<std::size_t>(period), 0.0);
  double mean_of_means = 0.0;
  for (int p = 0; p < period; ++p) {
    if (pos_count[static_cast<std::size_t>(p)] > 0)
      pos_mean[static_cast<std::size_t>(p)] =
          pos_sum[static_cast<std::size_t>(p)] / pos_count[static_cast<std::size_t>(p)];
    mean_of_means += pos_mean[static_cast<std::size_t>(p)];
  }
  mean_of_means /= period;
  for (double& m : pos_mean) m -= mean_of_means;

  c.seasonal.resize(series.size());
  c.residual.resize(series.size());
  for (int t = 0; t < n; ++t) {
    c.seasonal[static_cast<std::size_t>(t)] = pos_mean[static_cast<std::size_t>(t % period)];
    c.residual[static_cast<std::size_t>(t)] =
        series[static_cast<std::size_t>(t)] - c.trend[static_cast<std::size_t>(t)] -
        c.seasonal[static_cast<std::size_t>(t)] - c.holiday[static_cast<std::size_t>(t)];
  }
  return c;
}

StrengthScores strength_scores(const Components& c) {
  if (c.residual.empty()) throw LengthError(kModule, "empty components");
  const std::size_t n = c.residual.size();
  std::vector<double> tr(n), sr(n);
  for (std::size_t i = 0; i < n; ++i) {
    tr[i] = c.trend[i] + c.residual[i];
    sr[i] = c.seasonal[i] + c.residual[i];
  }
  const double var_r = population_variance(c.residual);
  const double var_tr = population_variance(tr);
  const double var_sr = population_variance(sr);

  StrengthScores s;
  s.trend_score = var_tr > 0.0 ? std::clamp(1.0 - var_r / var_tr, 0.0, 1.0) : 0.0;
  s.seasonality_score = var_sr > 0.0 ? std::clamp(1.0 - var_r / var_sr, 0.0, 1.0) : 0.0;
  s.group = s.trend_score >= s.seasonality_score ? SeriesGroup::TrendType
                                                 : SeriesGroup::SeasonalityType;
  return s;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_groups(
    const std::vector<StrengthScores>& scores) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> parts;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].group == SeriesGroup::TrendType)
      parts.first.push_back(i);
    else
      parts.second.push_back(i);
  }
  return parts;
}

}  // namespace hiercast
