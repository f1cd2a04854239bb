#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hiercast {

struct TrendModelConfig {
  int n_changepoints = 10;
  int weekly_order = 3;
  int yearly_order = 5;
  int yearly_min_days = 400;  // yearly terms are unidentifiable below one cycle
  double ridge_lambda = 1.0;
  std::map<int, std::string> holidays;  // 1-based day -> label, may cover future days
};

// Additive fit: value(t) = offset + slope*t + sum_i delta_i*max(0, t - c_i)
// + Fourier terms + holiday effect. Time is raw day index so the slope and
// offset read in data units.
struct TrendModelFit {
  int n_days = 0;
  std::vector<int> changepoints;
  double slope = 0.0;
  double offset = 0.0;
  std::vector<double> slope_deltas;
  int weekly_order = 0;
  int yearly_order = 0;
  std::vector<std::pair<double, double>> weekly_coeffs;  // (a_n, b_n), n = 1..order
  std::vector<std::pair<double, double>> yearly_coeffs;
  std::vector<std::string> holiday_labels;  // column order of the fit
  std::map<std::string, double> holiday_effects;
  std::map<int, std::string> holidays;
  double ridge_lambda = 0.0;

  double trend_at(int t) const;
  double seasonal_at(int t) const;
  double holiday_at(int t) const;
  double value_at(int t) const;  // unfloored model value
};

// Ridge least squares on the design [t, hinge terms, 1, Fourier, holiday
// indicators]; changepoints sit at uniform quantiles of the first 80% of
// days. Throws LengthError when the series is shorter than two weekly
// periods and NumericalError if the factorization breaks down.
TrendModelFit fit_trend_model(const std::vector<double>& series, const TrendModelConfig& config);

// Group totals for days from_day .. from_day+horizon-1, floored at 0. The
// piecewise trend extends past the data with the final segment's slope.
std::vector<double> forecast_totals(const TrendModelFit& fit, int from_day, int horizon);

// Coefficient dump: CSV `name,value`.
void write_fit(const TrendModelFit& fit, const std::string& path);

}  // namespace hiercast
