#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hiercast/decompose.hpp"
#include "hiercast/features.hpp"
#include "hiercast/gbm.hpp"
#include "hiercast/ingest.hpp"
#include "hiercast/trend_model.hpp"

namespace hiercast {

struct PipelineConfig {
  // Subset of {"state", "store", "category", "department"}; empty runs one
  // all-in-one group.
  std::vector<std::string> group_by;
  bool ts_split = true;
  bool score_at_aggregate = false;  // classify the whole group by its aggregate
  int horizon = 28;
  int train_end = 0;  // 0 = last panel day; smaller holds out an evaluation tail
  int decompose_period = 7;
  int min_subgroup = 5;  // smaller T-S subgroups merge into their sibling
  bool per_subgroup_normalization = false;
  FeatureConfig features;
  GbmParams gbm;  // seed and threads are overridden per group
  TrendModelConfig trend;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Training-stage output: per group, the T-S membership and one boosted model
// per subgroup. Kept separate from forecasting so models can be serialized
// and reloaded between the two stages.
struct TrainedGroup {
  std::string id;
  std::vector<int> rows;                  // panel rows, ascending
  std::vector<int> subgroup;              // aligned with rows; 0 trend, 1 seasonality
  std::vector<StrengthScores> scores;     // aligned with rows; empty when no split
  std::vector<std::string> notes;         // subgroup merges and fallbacks
  std::map<int, BoostedModel> models;     // subgroup -> model
};

struct TrainedBundle {
  int train_end = 0;
  std::vector<TrainedGroup> groups;  // sorted by id
};

struct GroupForecast {
  std::string id;
  std::vector<int> rows;
  std::vector<int> subgroup;
  std::vector<StrengthScores> scores;
  // Totals per allocation unit: key -1 = whole group (joint normalization),
  // otherwise the subgroup id.
  std::map<int, std::vector<double>> totals;
  std::vector<std::string> notes;
};

struct ForecastSet {
  int train_end = 0;
  int horizon = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> raw;        // per panel row: p-hat, length horizon
  std::vector<std::vector<double>> allocated;  // per panel row, length horizon
  std::vector<std::string> group_of_row;
  std::vector<GroupForecast> groups;  // sorted by id
  std::vector<std::string> warnings;
};

// Proportional split of `total` over `weights`; zero weight mass degrades to
// a uniform split. Throws DomainError on negative weights or total.
std::vector<double> allocate(const std::vector<double>& weights, double total);

TrainedBundle train_models(const SalesPanel& panel, const PipelineConfig& config);

ForecastSet forecast_from_bundle(const SalesPanel& panel, const PipelineConfig& config,
                                 const TrainedBundle& bundle);

ForecastSet run_pipeline(const SalesPanel& panel, const PipelineConfig& config);

// Forecast CSV `series_id,day,raw_weight,allocated_forecast`, rows ordered by
// panel row then day.
void write_forecasts(const ForecastSet& set, const SalesPanel& panel, const std::string& path);

// Group totals CSV `group_id,subgroup,day,G`.
void write_totals(const ForecastSet& set, const std::string& path);

}  // namespace hiercast
