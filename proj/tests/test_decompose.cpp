#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "hiercast/decompose.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/rng.hpp"
#include "oracles.hpp"

using namespace hiercast;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Largest reconstruction error |T+S+H+R - Y|; nonzero only through float
// reassociation, so the spec bound 1e-9 is generous.
double reconstruction_error(const Components& c, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    worst = std::max(worst, std::fabs(c.trend[i] + c.seasonal[i] + c.holiday[i] +
                                      c.residual[i] - y[i]));
  return worst;
}
}  // namespace

TEST_SUITE_BEGIN("decompose");

TEST_CASE("pure line has no seasonal or residual signal on the interior") {
  std::vector<double> y;
  for (int t = 1; t <= 56; ++t) y.push_back(static_cast<double>(t));
  const Components c = decompose(y, 7);
  for (int t = 4; t <= 53; ++t) {  // centered window fully inside the data
    CHECK(std::fabs(c.seasonal[t - 1]) < 1e-9);
    CHECK(std::fabs(c.residual[t - 1]) < 1e-9);
    CHECK(c.trend[t - 1] == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK(reconstruction_error(c, y) < 1e-9);
}

TEST_CASE("weekly sine splits into flat trend plus the sine") {
  std::vector<double> y;
  for (int t = 1; t <= 70; ++t) y.push_back(10.0 + std::sin(kTwoPi * t / 7.0));
  const Components c = decompose(y, 7);
  for (int t = 4; t <= 67; ++t) {
    CHECK(std::fabs(c.trend[t - 1] - 10.0) < 1e-6);
    CHECK(std::fabs(c.seasonal[t - 1] - std::sin(kTwoPi * t / 7.0)) < 1e-6);
  }
}

TEST_CASE("holiday spike lands in the holiday component") {
  std::vector<double> y(70, 10.0);
  const int t0 = 36;
  y[t0 - 1] += 100.0;
  const Components c = decompose(y, 7, {{t0, "SPIKE"}});
  // the centered moving average absorbs up to spike/period of the spike
  CHECK(std::fabs(c.holiday[t0 - 1] - 100.0) < 100.0 / 7.0 + 1e-9);
  for (int t = 1; t <= 70; ++t)
    if (t != t0) CHECK(c.holiday[t - 1] == 0.0);
  CHECK(reconstruction_error(c, y) < 1e-9);
}

TEST_CASE("days sharing a holiday label share one effect") {
  std::vector<double> y(70, 5.0);
  y[20] += 40.0;
  y[41] += 60.0;
  const Components c = decompose(y, 7, {{21, "EV"}, {42, "EV"}});
  CHECK(c.holiday[20] == c.holiday[41]);
  CHECK(c.holiday[20] > 0.0);
}

TEST_CASE("decompose validates its arguments") {
  std::vector<double> shorty(13, 1.0);
  CHECK_THROWS_AS(decompose(shorty, 7), LengthError);
  std::vector<double> ok(20, 1.0);
  CHECK_THROWS_AS(decompose(ok, 1), ValueError);
  CHECK_NOTHROW(decompose(std::vector<double>(14, 1.0), 7));
}

TEST_CASE("reconstruction is exact on random series") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int days = 14 + static_cast<int>(rng.next_below(100));
    std::vector<double> y;
    for (int t = 0; t < days; ++t) y.push_back(std::round(rng.uniform(0.0, 50.0)));
    std::map<int, std::string> holidays;
    if (trial % 3 == 0) holidays[1 + static_cast<int>(rng.next_below(days))] = "H";
    const Components c = decompose(y, 7, holidays);
    CHECK(reconstruction_error(c, y) < 1e-9);
  }
}

TEST_CASE("seasonal component sums to zero over each period") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> y;
    const int days = 70;
    for (int t = 1; t <= days; ++t)
      y.push_back(20.0 + 3.0 * std::sin(kTwoPi * t / 7.0) + rng.uniform(-1.0, 1.0));
    const Components c = decompose(y, 7);
    for (int block = 0; block + 7 <= days; block += 7) {
      double acc = 0.0;
      for (int i = 0; i < 7; ++i) acc += c.seasonal[block + i];
      CHECK(std::fabs(acc) < 1e-6 * days);
    }
  }
}

TEST_CASE("strength scores on hand-built components") {
  Components c;
  SUBCASE("zero residual, nonconstant trend") {
    c.trend = {0, 1, 2, 3};
    c.seasonal = {0, 0, 0, 0};
    c.holiday = {0, 0, 0, 0};
    c.residual = {0, 0, 0, 0};
    const StrengthScores s = strength_scores(c);
    CHECK(s.trend_score == 1.0);
    CHECK(s.seasonality_score == 0.0);  // Var(S+R) = 0 carries no signal
    CHECK(s.group == SeriesGroup::TrendType);
  }
  SUBCASE("constant trend scores zero") {
    c.trend = {5, 5, 5, 5};
    c.seasonal = {1, -1, 1, -1};
    c.holiday = {0, 0, 0, 0};
    c.residual = {0.3, -0.1, 0.2, -0.4};
    const StrengthScores s = strength_scores(c);
    // Var(T+R) equals Var(R) only up to float cancellation here
    CHECK(s.trend_score <= 1e-12);
    CHECK(s.seasonality_score > 0.5);
    CHECK(s.group == SeriesGroup::SeasonalityType);
  }
  SUBCASE("matches the direct variance-ratio computation") {
    c.trend = {0, 1, 2, 3};
    c.seasonal = {1, -1, 1, -1};
    c.holiday = {0, 0, 0, 0};
    c.residual = {0.1, -0.1, 0.1, -0.1};
    const StrengthScores s = strength_scores(c);
    CHECK(s.trend_score ==
          doctest::Approx(oracle::strength_score(c.trend, c.residual)).epsilon(1e-12));
    CHECK(s.seasonality_score ==
          doctest::Approx(oracle::strength_score(c.seasonal, c.residual)).epsilon(1e-12));
  }
}

TEST_CASE("scores stay within bounds and are scale equivariant") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> y;
    const int days = 40;
    for (int t = 1; t <= days; ++t)
      y.push_back(rng.uniform(0.0, 10.0) + 0.2 * t +
                  2.0 * std::sin(kTwoPi * t / 7.0));
    const StrengthScores s = strength_scores(decompose(y, 7));
    CHECK(s.trend_score >= 0.0);
    CHECK(s.trend_score <= 1.0);
    CHECK(s.seasonality_score >= 0.0);
    CHECK(s.seasonality_score <= 1.0);

    std::vector<double> scaled;
    for (double v : y) scaled.push_back(3.5 * v);
    const StrengthScores s2 = strength_scores(decompose(scaled, 7));
    CHECK(s2.trend_score == doctest::Approx(s.trend_score).epsilon(1e-12));
    CHECK(s2.seasonality_score == doctest::Approx(s.seasonality_score).epsilon(1e-12));
    CHECK(s2.group == s.group);
  }
}

TEST_CASE("split_groups partitions by the greater score") {
  std::vector<StrengthScores> scores(3);
  scores[0].group = SeriesGroup::TrendType;
  scores[1].group = SeriesGroup::SeasonalityType;
  scores[2].group = SeriesGroup::TrendType;
  const auto [trend, seasonal] = split_groups(scores);
  CHECK(trend == std::vector<std::size_t>{0, 2});
  CHECK(seasonal == std::vector<std::size_t>{1});

  const auto [all_trend, none] = split_groups(std::vector<StrengthScores>(4));
  CHECK(all_trend.size() == 4);
  CHECK(none.empty());
}

TEST_CASE("construction labels are recovered for 20 synthetic series") {
  Rng rng(24);
  int correct = 0;
  for (int i = 0; i < 20; ++i) {
    const bool trendy = i < 10;
    std::vector<double> y;
    for (int t = 1; t <= 120; ++t) {
      const double trend = trendy ? 0.5 * t : 0.02 * t;
      const double season = trendy ? 0.2 * std::sin(kTwoPi * t / 7.0)
                                   : 4.0 * std::sin(kTwoPi * t / 7.0);
      y.push_back(10.0 + trend + season + rng.uniform(-0.5, 0.5));
    }
    const StrengthScores s = strength_scores(decompose(y, 7));
    const bool got_trend = s.group == SeriesGroup::TrendType;
    if (got_trend == trendy) ++correct;
  }
  CHECK(correct >= 18);
}

TEST_SUITE_END();
