#include "hiercast/trend_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "trend_model";
constexpr double kWeeklyPeriod = 7.0;
constexpr double kYearlyPeriod = 365.25;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

double TrendModelFit::trend_at(int t) const {
  double v = offset + slope * t;
  for (std::size_t i = 0; i < changepoints.size(); ++i)
    v += slope_deltas[i] * std::max(0.0, static_cast<double>(t - changepoints[i]));
  return v;
}

double TrendModelFit::seasonal_at(int t) const {
  double v = 0.0;
  for (int n = 1; n <= weekly_order; ++n) {
    const double ang = kTwoPi * n * t / kWeeklyPeriod;
    v += weekly_coeffs[static_cast<std::size_t>(n - 1)].first * std::sin(ang) +
         weekly_coeffs[static_cast<std::size_t>(n - 1)].second * std::cos(ang);
  }
  for (int n = 1; n <= yearly_order; ++n) {
    const double ang = kTwoPi * n * t / kYearlyPeriod;
    v += yearly_coeffs[static_cast<std::size_t>(n - 1)].first * std::sin(ang) +
         yearly_coeffs[static_cast<std::size_t>(n - 1)].second * std::cos(ang);
  }
  return v;
}

double TrendModelFit::holiday_at(int t) const {
  auto it = holidays.find(t);
  if (it == holidays.end()) return 0.0;
  auto eff = holiday_effects.find(it->second);
  return eff == holiday_effects.end() ? 0.0 : eff->second;
}

double TrendModelFit::value_at(int t) const {
  return trend_at(t) + seasonal_at(t) + holiday_at(t);
}

TrendModelFit fit_trend_model(const std::vector<double>& series, const TrendModelConfig& config) {
  const int D = static_cast<int>(series.size());
  if (D < 2 * static_cast<int>(kWeeklyPeriod))
    throw LengthError(kModule, "series length " + std::to_string(D) +
                                   " is shorter than two weekly periods");
  if (config.n_changepoints < 0) throw ConfigError(kModule, "n_changepoints must be >= 0");
  if (config.ridge_lambda < 0.0) throw ConfigError(kModule, "ridge_lambda must be >= 0");

  TrendModelFit fit;
  fit.n_days = D;
  fit.ridge_lambda = config.ridge_lambda;
  fit.weekly_order = std::max(0, config.weekly_order);
  fit.yearly_order = D >= config.yearly_min_days ? std::max(0, config.yearly_order) : 0;
  fit.holidays = config.holidays;

  // Uniform quantiles over the first 80% of days, deduplicated; a hinge at
  // c < 1 would be collinear with the t column.
  std::set<int> cps;
  const double span = 0.8 * D;
  for (int i = 1; i <= config.n_changepoints; ++i) {
    const int c = static_cast<int>(std::floor(span * i / (config.n_changepoints + 1)));
    if (c >= 1 && c < D) cps.insert(c);
  }
  fit.changepoints.assign(cps.begin(), cps.end());

  std::set<std::string> labels;
  for (const auto& [day, label] : config.holidays)
    if (day >= 1 && day <= D) labels.insert(label);
  fit.holiday_labels.assign(labels.begin(), labels.end());

  const int n_cp = static_cast<int>(fit.changepoints.size());
  const int cols = 2 + n_cp + 2 * fit.weekly_order + 2 * fit.yearly_order +
                   static_cast<int>(fit.holiday_labels.size());
  Eigen::MatrixXd A(D, cols);
  Eigen::VectorXd y(D);
  for (int t = 1; t <= D; ++t) {
    int c = 0;
    A(t - 1, c++) = t;
    for (int i = 0; i < n_cp; ++i)
      A(t - 1, c++) = std::max(0.0, static_cast<double>(t - fit.changepoints[static_cast<std::size_t>(i)]));
    A(t - 1, c++) = 1.0;
    for (int n = 1; n <= fit.weekly_order; ++n) {
      const double ang = kTwoPi * n * t / kWeeklyPeriod;
      A(t - 1, c++) = std::sin(ang);
      A(t - 1, c++) = std::cos(ang);
    }
    for (int n = 1; n <= fit.yearly_order; ++n) {
      const double ang = kTwoPi * n * t / kYearlyPeriod;
      A(t - 1, c++) = std::sin(ang);
      A(t - 1, c++) = std::cos(ang);
    }
    for (const std::string& label : fit.holiday_labels) {
      auto it = config.holidays.find(t);
      A(t - 1, c++) = it != config.holidays.end() && it->second == label ? 1.0 : 0.0;
    }
    y(t - 1) = series[static_cast<std::size_t>(t - 1)];
  }

  Eigen::MatrixXd normal = A.transpose() * A;
  normal.diagonal().array() += config.ridge_lambda;
  const Eigen::VectorXd rhs = A.transpose() * y;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError(kModule, "normal-equation factorization failed");
  Eigen::VectorXd beta = ldlt.solve(rhs);
  // Two rounds of iterative refinement keep the normal-equation residual near
  // machine precision even when the raw-time columns are badly scaled.
  for (int it = 0; it < 2; ++it) {
    const Eigen::VectorXd r = rhs - normal * beta;
    beta += ldlt.solve(r);
  }
  if (!beta.allFinite()) throw NumericalError(kModule, "singular normal equations");

  int c = 0;
  fit.slope = beta(c++);
  fit.slope_deltas.resize(static_cast<std::size_t>(n_cp));
  for (int i = 0; i < n_cp; ++i) fit.slope_deltas[static_cast<std::size_t>(i)] = beta(c++);
  fit.offset = beta(c++);
  for (int n = 1; n <= fit.weekly_order; ++n) {
    const double a = beta(c++);
    const double b = beta(c++);
    fit.weekly_coeffs.emplace_back(a, b);
  }
  for (int n = 1; n <= fit.yearly_order; ++n) {
    const double a = beta(c++);
    const double b = beta(c++);
    fit.yearly_coeffs.emplace_back(a, b);
  }
  for (const std::string& label : fit.holiday_labels) fit.holiday_effects[label] = beta(c++);
  return fit;
}

std::vector<double> forecast_totals(const TrendModelFit& fit, int from_day, int horizon) {
  if (horizon < 1) throw ConfigError(kModule, "horizon must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(horizon));
  for (int i = 0; i < horizon; ++i)
    out[static_cast<std::size_t>(i)] = std::max(0.0, fit.value_at(from_day + i));
  return out;
}

void write_fit(const TrendModelFit& fit, const std::string& path) {
  csv::Writer w(path, kModule);
  w.row({"name", "value"});
  w.row({"slope", fmt_double(fit.slope)});
  w.row({"offset", fmt_double(fit.offset)});
  w.row({"ridge_lambda", fmt_double(fit.ridge_lambda)});
  for (std::size_t i = 0; i < fit.changepoints.size(); ++i) {
    w.row({"changepoint_" + std::to_string(fit.changepoints[i]),
           fmt_double(fit.slope_deltas[i])});
  }
  for (std::size_t n = 0; n < fit.weekly_coeffs.size(); ++n) {
    w.row({"weekly_sin_" + std::to_string(n + 1), fmt_double(fit.weekly_coeffs[n].first)});
    w.row({"weekly_cos_" + std::to_string(n + 1), fmt_double(fit.weekly_coeffs[n].second)});
  }
  for (std::size_t n = 0; n < fit.yearly_coeffs.size(); ++n) {
    w.row({"yearly_sin_" + std::to_string(n + 1), fmt_double(fit.yearly_coeffs[n].first)});
    w.row({"yearly_cos_" + std::to_string(n + 1), fmt_double(fit.yearly_coeffs[n].second)});
  }
  for (const auto& [label, effect] : fit.holiday_effects)
    w.row({"holiday_" + label, fmt_double(effect)});
}

}  // namespace hiercast
