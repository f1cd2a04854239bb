#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace hiercast {

// Additive split of one series: Y(t) = T(t) + S(t) + H(t) + R(t), all length D.
// The residual is defined by subtraction, so the identity holds exactly.
struct Components {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> holiday;
  std::vector<double> residual;
};

enum class SeriesGroup { TrendType, SeasonalityType };

const char* group_name(SeriesGroup g);

struct StrengthScores {
  double trend_score = 0.0;
  double seasonality_score = 0.0;
  SeriesGroup group = SeriesGroup::TrendType;
};

// Classical decomposition. Trend is a centered moving average of window
// `period` (2 x period averaged when the period is even); endpoints where the
// average is undefined copy the nearest defined value. Holiday effects are
// per-label means of (Y - trend) on the labelled days. Seasonal values are
// period-position means of (Y - trend - holiday) over the interior days only
// (the endpoint extension would otherwise bias the positions), re-centered to
// sum to zero over one period.
//
// `holiday_labels` maps 1-based day index to a label; days sharing a label
// share one holiday effect. Throws LengthError when D < 2 x period and
// ValueError when period < 2.
Components decompose(const std::vector<double>& series, int period,
                     const std::map<int, std::string>& holiday_labels = {});

// Variance-ratio strength scores, population variance, clamped to [0, 1].
// A zero denominator yields score 0 (constant T+R carries no trend signal).
// Ties classify as TrendType.
StrengthScores strength_scores(const Components& c);

// Partition series indices by group label. Order within each part follows the
// input order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_groups(
    const std::vector<StrengthScores>& scores);

}  // namespace hiercast
