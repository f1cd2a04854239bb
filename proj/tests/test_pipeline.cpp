#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hiercast/errors.hpp"
#include "hiercast/pipeline.hpp"
#include "hiercast/rng.hpp"
#include "hiercast/synth.hpp"
#include "test_helpers.hpp"
#include "oracles.hpp"

using namespace hiercast;

namespace {

// Small GBM settings keep every end-to-end case under a second.
PipelineConfig fast_config() {
  PipelineConfig config;
  config.gbm.rounds = 30;
  config.gbm.max_leaves = 8;
  config.gbm.min_data_in_leaf = 5;
  config.min_subgroup = 1;
  return config;
}

SynthResult small_mix(int items, int stores, int days, std::uint64_t seed = 1) {
  SynthSpec spec;
  spec.n_items = items;
  spec.n_stores = stores;
  spec.n_states = stores > 1 ? 2 : 1;
  spec.days = days;
  spec.slope_min = 0.04;
  spec.slope_max = 0.06;
  spec.noise = 0.2;
  spec.zero_inflation = 0.2;
  spec.seed = seed;
  return generate(spec);
}

void check_conservation(const ForecastSet& set, double tol) {
  for (const GroupForecast& gf : set.groups)
    for (const auto& [unit, totals] : gf.totals) {
      for (int d = 0; d < set.horizon; ++d) {
        double acc = 0.0;
        for (std::size_t i = 0; i < gf.rows.size(); ++i) {
          if (unit >= 0 && gf.subgroup[i] != unit) continue;
          acc += set.allocated[static_cast<std::size_t>(gf.rows[i])][static_cast<std::size_t>(d)];
        }
        const double g = totals[static_cast<std::size_t>(d)];
        CHECK(std::fabs(acc - g) <= tol * std::max(1.0, std::fabs(g)));
      }
    }
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("allocate splits proportionally") {
  CHECK(allocate({7.0}, 3.5) == std::vector<double>{3.5});
  CHECK(allocate({2.0, 3.0}, 10.0) == std::vector<double>{4.0, 6.0});
  CHECK(allocate({0.0, 0.0}, 10.0) == std::vector<double>{5.0, 5.0});
  CHECK(allocate({}, 10.0).empty());
  CHECK_THROWS_AS(allocate({1.0, -0.5}, 10.0), DomainError);
  CHECK_THROWS_AS(allocate({1.0, 2.0}, -1.0), DomainError);

  Rng rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> weights;
    for (int i = 0; i < 50; ++i)
      weights.push_back(rng.bernoulli(0.2) ? 0.0 : rng.uniform(0.0, 5.0));
    const double total = rng.uniform(0.0, 100.0);
    const std::vector<double> got = allocate(weights, total);
    const std::vector<double> want = oracle::allocate(weights, total);
    double sum = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
      sum += got[i];
    }
    CHECK(sum == doctest::Approx(total).epsilon(1e-12));
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = i + 1; j < got.size(); ++j)
        CHECK((weights[i] - weights[j]) * (got[i] - got[j]) >= 0.0);
  }
}

TEST_CASE("single series forecasts equal the trend totals") {
  SynthSpec spec;
  spec.n_items = 1;
  spec.n_stores = 1;
  spec.n_states = 1;
  spec.n_categories = 1;
  spec.n_departments = 1;
  spec.days = 120;
  const SynthResult synth = generate(spec);
  const ForecastSet set = run_pipeline(synth.panel, fast_config());
  REQUIRE(set.groups.size() == 1);
  const std::vector<double>& totals = set.groups[0].totals.at(-1);
  CHECK(set.allocated[0] == totals);  // g = 1 allocation is the identity
  for (double v : set.allocated[0]) CHECK(v >= 0.0);
}

TEST_CASE("subgroup assignment equals the decompose partition") {
  const SynthResult synth = small_mix(20, 1, 120);
  PipelineConfig config = fast_config();
  const ForecastSet set = run_pipeline(synth.panel, config);
  REQUIRE(set.groups.size() == 1);
  const GroupForecast& g = set.groups[0];

  std::vector<StrengthScores> scores;
  for (int r : g.rows) {
    const std::vector<double>& y = synth.panel.values[static_cast<std::size_t>(r)];
    scores.push_back(strength_scores(decompose(y, config.decompose_period)));
  }
  const auto [trend_rows, seasonal_rows] = split_groups(scores);
  std::set<std::size_t> trend_set(trend_rows.begin(), trend_rows.end());
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    CHECK(g.subgroup[i] == (trend_set.count(i) ? 0 : 1));
    CHECK(g.scores[i].trend_score == scores[i].trend_score);
    CHECK(g.scores[i].seasonality_score == scores[i].seasonality_score);
  }
  CHECK_FALSE(trend_rows.empty());
  CHECK_FALSE(seasonal_rows.empty());
  SUBCASE("ts_split off uses one subgroup") {
    config.ts_split = false;
    const ForecastSet flat = run_pipeline(synth.panel, config);
    for (int s : flat.groups[0].subgroup) CHECK(s == 0);
    CHECK(flat.groups[0].scores.empty());
  }
}

TEST_CASE("store groups are isolated") {
  const SynthResult synth = small_mix(6, 2, 100);
  PipelineConfig config = fast_config();
  config.group_by = {"store"};
  const ForecastSet joint = run_pipeline(synth.panel, config);

  for (const std::string& store : {"ST0_0", "ST1_1"}) {
    SalesPanel slice;
    slice.calendar = synth.panel.calendar;
    std::vector<int> rows;
    for (int i = 0; i < synth.panel.num_series(); ++i)
      if (synth.panel.series[static_cast<std::size_t>(i)].store_id == store) {
        rows.push_back(i);
        slice.series.push_back(synth.panel.series[static_cast<std::size_t>(i)]);
        slice.values.push_back(synth.panel.values[static_cast<std::size_t>(i)]);
      }
    REQUIRE(rows.size() == 6);
    const ForecastSet alone = run_pipeline(slice, config);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(alone.raw[i] == joint.raw[static_cast<std::size_t>(rows[i])]);
      CHECK(alone.allocated[i] == joint.allocated[static_cast<std::size_t>(rows[i])]);
    }
  }
}

TEST_CASE("allocation conserves the group totals") {
  const SynthResult synth = small_mix(12, 2, 100);
  PipelineConfig config = fast_config();
  config.group_by = {"store"};
  const ForecastSet set = run_pipeline(synth.panel, config);
  REQUIRE(set.groups.size() == 2);
  check_conservation(set, 1e-9);
  for (const auto& row : set.raw)
    for (double v : row) CHECK(v > 0.0);  // Tweedie predictions stay positive
  for (const auto& row : set.allocated)
    for (double v : row) CHECK(v >= 0.0);

  SUBCASE("per-subgroup normalization conserves within each subgroup") {
    config.per_subgroup_normalization = true;
    const ForecastSet per_sub = run_pipeline(synth.panel, config);
    for (const GroupForecast& gf : per_sub.groups)
      for (const auto& [unit, totals] : gf.totals) CHECK(unit >= 0);
    check_conservation(per_sub, 1e-9);
  }

  SUBCASE("mse loss still yields non-negative conserved forecasts") {
    config.gbm.loss = LossKind::MSE;
    const ForecastSet mse = run_pipeline(synth.panel, config);
    check_conservation(mse, 1e-9);
    for (const auto& row : mse.allocated)
      for (double v : row) CHECK(v >= 0.0);
  }
}

TEST_CASE("holdout split forecasts the tail days") {
  const SynthResult synth = small_mix(8, 1, 120);
  PipelineConfig config = fast_config();
  config.train_end = 92;
  const ForecastSet set = run_pipeline(synth.panel, config);
  CHECK(set.train_end == 92);
  CHECK(set.horizon == 28);
  for (const auto& row : set.allocated) CHECK(row.size() == 28);
}

TEST_CASE("runs are deterministic and thread-count independent") {
  testutil::TempDir dir("det");
  const SynthResult synth = small_mix(8, 2, 90);
  PipelineConfig config = fast_config();
  config.group_by = {"store"};
  config.threads = 1;
  const ForecastSet one = run_pipeline(synth.panel, config);
  config.threads = 4;
  const ForecastSet four = run_pipeline(synth.panel, config);
  CHECK(one.raw == four.raw);
  CHECK(one.allocated == four.allocated);

  write_forecasts(one, synth.panel, dir.file("one.csv"));
  write_forecasts(four, synth.panel, dir.file("four.csv"));
  CHECK(testutil::read_text(dir.file("one.csv")) == testutil::read_text(dir.file("four.csv")));
  const ForecastSet again = run_pipeline(synth.panel, config);
  CHECK(again.allocated == four.allocated);
}

TEST_CASE("small subgroups merge into their sibling") {
  SynthSpec spec;
  spec.n_items = 20;
  spec.n_stores = 1;
  spec.n_states = 1;
  spec.days = 120;
  spec.trend_fraction = 0.05;  // exactly one trend archetype
  spec.slope_min = 0.05;
  spec.slope_max = 0.06;
  spec.noise = 0.1;
  const SynthResult synth = generate(spec);
  PipelineConfig config = fast_config();
  config.min_subgroup = 5;
  const ForecastSet set = run_pipeline(synth.panel, config);
  REQUIRE(set.groups.size() == 1);
  const GroupForecast& g = set.groups[0];
  for (int s : g.subgroup) CHECK(s == 1);
  REQUIRE(g.notes.size() == 1);
  CHECK(g.notes[0].find("merged") != std::string::npos);
  REQUIRE(set.warnings.size() == 1);
  CHECK(set.warnings[0].find("group ALL") != std::string::npos);
}

TEST_CASE("aggregate scoring classifies the whole group at once") {
  const SynthResult synth = small_mix(10, 1, 100);
  PipelineConfig config = fast_config();
  config.score_at_aggregate = true;
  const ForecastSet set = run_pipeline(synth.panel, config);
  const GroupForecast& g = set.groups[0];
  for (std::size_t i = 1; i < g.subgroup.size(); ++i) CHECK(g.subgroup[i] == g.subgroup[0]);
  for (std::size_t i = 1; i < g.scores.size(); ++i)
    CHECK(g.scores[i].trend_score == g.scores[0].trend_score);
}

TEST_CASE("an all-zero panel still forecasts") {
  const SalesPanel panel = testutil::make_panel(
      std::vector<std::vector<double>>(6, std::vector<double>(60, 0.0)));
  const ForecastSet set = run_pipeline(panel, fast_config());
  for (const auto& row : set.allocated)
    for (double v : row) CHECK(v == 0.0);
  check_conservation(set, 1e-9);
}

TEST_CASE("config validation carries group context") {
  const SalesPanel panel = testutil::make_panel(
      std::vector<std::vector<double>>(3, std::vector<double>(60, 1.0)));
  PipelineConfig config = fast_config();
  config.group_by = {"aisle"};
  CHECK_THROWS_AS(run_pipeline(panel, config), ConfigError);
  config = fast_config();
  config.horizon = 0;
  CHECK_THROWS_AS(run_pipeline(panel, config), ConfigError);
  config = fast_config();
  config.train_end = 1;
  CHECK_THROWS_AS(run_pipeline(panel, config), ConfigError);
  config = fast_config();
  config.min_subgroup = 0;
  CHECK_THROWS_AS(run_pipeline(panel, config), ConfigError);
  config = fast_config();
  config.gbm.rounds = 0;
  CHECK_THROWS_WITH_AS(run_pipeline(panel, config), doctest::Contains("group ALL"), ConfigError);
}

TEST_CASE("forecast files enumerate rows and groups") {
  testutil::TempDir dir("fcsv");
  const SynthResult synth = small_mix(4, 1, 90);
  const ForecastSet set = run_pipeline(synth.panel, fast_config());
  write_forecasts(set, synth.panel, dir.file("forecasts.csv"));
  write_totals(set, dir.file("totals.csv"));

  const std::string forecasts = testutil::read_text(dir.file("forecasts.csv"));
  CHECK(forecasts.rfind("series_id,day,raw_weight,allocated_forecast\n", 0) == 0);
  CHECK(std::count(forecasts.begin(), forecasts.end(), '\n') == 1 + 4 * 28);
  CHECK(forecasts.find(",91,") != std::string::npos);  // first forecast day is T+1

  const std::string totals = testutil::read_text(dir.file("totals.csv"));
  CHECK(totals.rfind("group_id,subgroup,day,G\n", 0) == 0);
  CHECK(std::count(totals.begin(), totals.end(), '\n') ==
        1 + 28 * static_cast<long>(set.groups[0].totals.size()));
  CHECK(totals.find("ALL,joint,") != std::string::npos);
}

TEST_SUITE_END();
