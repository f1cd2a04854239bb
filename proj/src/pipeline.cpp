#include "hiercast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/parallel.hpp"
#include "hiercast/rng.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "pipeline";

// Canonical dimension order for group ids, independent of config order.
const std::vector<std::string> kGroupDims = {"state", "store", "category", "department"};

std::vector<std::string> canonical_group_by(const std::vector<std::string>& group_by) {
  std::set<std::string> seen;
  for (const std::string& dim : group_by) {
    if (std::find(kGroupDims.begin(), kGroupDims.end(), dim) == kGroupDims.end())
      throw ConfigError(kModule, "unknown group_by dimension '" + dim + "'");
    seen.insert(dim);
  }
  std::vector<std::string> out;
  for (const std::string& dim : kGroupDims)
    if (seen.count(dim)) out.push_back(dim);
  return out;
}

std::string dim_value(const SeriesInfo& info, const std::string& dim) {
  if (dim == "state") return info.state_id;
  if (dim == "store") return info.store_id;
  if (dim == "category") return info.cat_id;
  return info.dept_id;
}

std::string group_id_of(const SeriesInfo& info, const std::vector<std::string>& dims) {
  if (dims.empty()) return "ALL";
  std::string id;
  for (const std::string& dim : dims) {
    if (!id.empty()) id += "|";
    id += dim_value(info, dim);
  }
  return id;
}

int resolve_train_end(const SalesPanel& panel, const PipelineConfig& config) {
  const int T = config.train_end == 0 ? panel.num_days() : config.train_end;
  if (T < 2 || T > panel.num_days())
    throw ConfigError(kModule, "train_end " + std::to_string(T) + " outside [2, " +
                                   std::to_string(panel.num_days()) + "]");
  return T;
}

std::vector<double> aggregate_train(const SalesPanel& panel, const std::vector<int>& rows,
                                    int train_end) {
  std::vector<double> agg(static_cast<std::size_t>(train_end), 0.0);
  for (int r : rows)
    for (int t = 0; t < train_end; ++t)
      agg[static_cast<std::size_t>(t)] +=
          panel.values[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
  return agg;
}

// T-S membership for the rows of one group: subgroup[i] = 0 (trend) or 1
// (seasonality), plus the per-row scores backing the assignment.
void split_subgroups(const SalesPanel& panel, const PipelineConfig& config, int train_end,
                     const std::map<int, std::string>& holidays, TrainedGroup& group) {
  group.subgroup.assign(group.rows.size(), 0);
  if (!config.ts_split) return;

  std::map<int, std::string> train_holidays;
  for (const auto& [day, label] : holidays)
    if (day <= train_end) train_holidays.emplace(day, label);

  if (config.score_at_aggregate) {
    const std::vector<double> agg = aggregate_train(panel, group.rows, train_end);
    const StrengthScores s =
        strength_scores(decompose(agg, config.decompose_period, train_holidays));
    group.scores.assign(group.rows.size(), s);
    const int sub = s.group == SeriesGroup::TrendType ? 0 : 1;
    group.subgroup.assign(group.rows.size(), sub);
    return;
  }

  group.scores.resize(group.rows.size());
  for (std::size_t i = 0; i < group.rows.size(); ++i) {
    const std::vector<double>& y = panel.values[static_cast<std::size_t>(group.rows[i])];
    const std::vector<double> train(y.begin(), y.begin() + train_end);
    group.scores[i] = strength_scores(decompose(train, config.decompose_period, train_holidays));
    group.subgroup[i] = group.scores[i].group == SeriesGroup::TrendType ? 0 : 1;
  }

  int n_trend = 0;
  for (int s : group.subgroup)
    if (s == 0) ++n_trend;
  const int n_seasonal = static_cast<int>(group.rows.size()) - n_trend;
  if (n_trend > 0 && n_trend < config.min_subgroup && n_seasonal >= n_trend) {
    group.notes.push_back("merged " + std::to_string(n_trend) +
                          " trend series into the seasonality subgroup");
    group.subgroup.assign(group.rows.size(), 1);
  } else if (n_seasonal > 0 && n_seasonal < config.min_subgroup && n_trend >= n_seasonal) {
    group.notes.push_back("merged " + std::to_string(n_seasonal) +
                          " seasonality series into the trend subgroup");
    group.subgroup.assign(group.rows.size(), 0);
  }
}

std::vector<int> subgroup_ids(const TrainedGroup& group) {
  std::set<int> subs(group.subgroup.begin(), group.subgroup.end());
  return {subs.begin(), subs.end()};
}

std::vector<int> subgroup_rows(const TrainedGroup& group, int sub) {
  std::vector<int> rows;
  for (std::size_t i = 0; i < group.rows.size(); ++i)
    if (group.subgroup[i] == sub) rows.push_back(group.rows[i]);
  return rows;
}

template <typename Fn>
void run_group_stage(const TrainedGroup& group, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    throw ConfigError(e.module(), "group " + group.id + ": " + e.what());
  } catch (const Error& e) {
    throw DataError(e.module(), "group " + group.id + ": " + e.what());
  }
}
}  // namespace

std::vector<double> allocate(const std::vector<double>& weights, double total) {
  if (total < 0.0) throw DomainError(kModule, "total must be non-negative");
  double mass = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError(kModule, "allocation weights must be non-negative");
    mass += w;
  }
  std::vector<double> out(weights.size());
  if (weights.empty()) return out;
  if (mass == 0.0) {
    const double share = total / static_cast<double>(weights.size());
    for (double& v : out) v = share;
    return out;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = weights[i] / mass * total;
  return out;
}

TrainedBundle train_models(const SalesPanel& panel, const PipelineConfig& config) {
  const std::vector<std::string> dims = canonical_group_by(config.group_by);
  const int T = resolve_train_end(panel, config);
  if (config.horizon < 1) throw ConfigError(kModule, "horizon must be >= 1");
  if (config.min_subgroup < 1) throw ConfigError(kModule, "min_subgroup must be >= 1");

  const Calendar calendar = panel.calendar.size() >= T + config.horizon
                                ? panel.calendar
                                : panel.calendar.extended_to(T + config.horizon);
  const std::map<int, std::string> holidays = calendar.event_labels();

  TrainedBundle bundle;
  bundle.train_end = T;
  std::map<std::string, std::vector<int>> members;
  for (int i = 0; i < panel.num_series(); ++i)
    members[group_id_of(panel.series[static_cast<std::size_t>(i)], dims)].push_back(i);
  for (auto& [id, rows] : members) {
    TrainedGroup g;
    g.id = id;
    g.rows = std::move(rows);
    bundle.groups.push_back(std::move(g));
  }

  // Groups are independent work units; with a single group the parallel
  // budget moves inside the trainer instead.
  const int group_threads = bundle.groups.size() > 1 ? config.threads : 1;
  const int gbm_threads = bundle.groups.size() > 1 ? 1 : config.threads;

  std::vector<double> flags(static_cast<std::size_t>(panel.num_series()), 0.0);
  std::vector<TrainedGroup>& groups = bundle.groups;
  parallel_for(groups.size(), group_threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t gi = b; gi < e; ++gi) {
      TrainedGroup& group = groups[gi];
      run_group_stage(group, [&] {
        split_subgroups(panel, config, T, holidays, group);
        // flags is shared across workers but each group writes and reads only
        // its own panel-row slots.
        for (std::size_t i = 0; i < group.rows.size(); ++i)
          flags[static_cast<std::size_t>(group.rows[i])] = group.subgroup[i];
        for (int sub : subgroup_ids(group)) {
          const std::vector<int> rows = subgroup_rows(group, sub);
          FeatureTable table =
              build_training_table(panel, calendar, rows, config.features, T, flags);
          GbmParams params = config.gbm;
          params.seed = mix_seed(config.seed, fnv1a(group.id + "#" + std::to_string(sub)));
          params.threads = gbm_threads;
          const DataView view{table.values.data(), table.num_rows(), table.num_cols()};
          group.models[sub] = train(view, table.labels, table.names, params);
        }
      });
    }
  });
  return bundle;
}

ForecastSet forecast_from_bundle(const SalesPanel& panel, const PipelineConfig& config,
                                 const TrainedBundle& bundle) {
  const int T = bundle.train_end;
  const int h = config.horizon;
  const Calendar calendar =
      panel.calendar.size() >= T + h ? panel.calendar : panel.calendar.extended_to(T + h);
  std::map<int, std::string> holidays;
  for (const auto& [day, label] : calendar.event_labels())
    if (day <= T + h) holidays.emplace(day, label);

  ForecastSet out;
  out.train_end = T;
  out.horizon = h;
  out.seed = config.seed;
  out.raw.assign(static_cast<std::size_t>(panel.num_series()),
                 std::vector<double>(static_cast<std::size_t>(h), 0.0));
  out.allocated = out.raw;
  out.group_of_row.assign(static_cast<std::size_t>(panel.num_series()), "");
  out.groups.resize(bundle.groups.size());

  std::vector<double> flags(static_cast<std::size_t>(panel.num_series()), 0.0);
  for (const TrainedGroup& group : bundle.groups)
    for (std::size_t i = 0; i < group.rows.size(); ++i)
      flags[static_cast<std::size_t>(group.rows[i])] = group.subgroup[i];

  const int group_threads = bundle.groups.size() > 1 ? config.threads : 1;
  parallel_for(bundle.groups.size(), group_threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t gi = b; gi < e; ++gi) {
      const TrainedGroup& group = bundle.groups[gi];
      GroupForecast& gf = out.groups[gi];
      gf.id = group.id;
      gf.rows = group.rows;
      gf.subgroup = group.subgroup;
      gf.scores = group.scores;
      gf.notes = group.notes;
      run_group_stage(group, [&] {
        for (int r : group.rows) out.group_of_row[static_cast<std::size_t>(r)] = group.id;

        // Raw weights p-hat per member row and horizon day.
        for (const auto& [sub, model] : group.models) {
          const std::vector<int> rows = subgroup_rows(group, sub);
          const FeatureTable table =
              prediction_rows(panel, calendar, rows, config.features, T, flags);
          const DataView view{table.values.data(), table.num_rows(), table.num_cols()};
          const std::vector<double> pred = predict(model, view);
          for (std::size_t i = 0; i < rows.size(); ++i)
            for (int d = 0; d < h; ++d)
              out.raw[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(d)] =
                  pred[i * static_cast<std::size_t>(h) + static_cast<std::size_t>(d)];
        }

        // Allocation units: the whole group by default, each subgroup when
        // per-subgroup normalization is on. Totals come from a trend model on
        // the unit's aggregate.
        TrendModelConfig tconf = config.trend;
        tconf.holidays = holidays;
        std::map<int, std::vector<int>> units;
        if (config.per_subgroup_normalization) {
          for (int sub : subgroup_ids(group)) units[sub] = subgroup_rows(group, sub);
        } else {
          units[-1] = group.rows;
        }
        for (const auto& [unit, rows] : units) {
          const TrendModelFit fit = fit_trend_model(aggregate_train(panel, rows, T), tconf);
          const std::vector<double> totals = forecast_totals(fit, T + 1, h);
          gf.totals[unit] = totals;
          for (int d = 0; d < h; ++d) {
            std::vector<double> weights(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
              weights[i] = std::max(
                  0.0, out.raw[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(d)]);
            const std::vector<double> alloc = allocate(weights, totals[static_cast<std::size_t>(d)]);
            for (std::size_t i = 0; i < rows.size(); ++i)
              out.allocated[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(d)] =
                  alloc[i];
          }
        }
      });
    }
  });
  for (const GroupForecast& gf : out.groups)
    for (const std::string& note : gf.notes)
      out.warnings.push_back("group " + gf.id + ": " + note);
  return out;
}

ForecastSet run_pipeline(const SalesPanel& panel, const PipelineConfig& config) {
  return forecast_from_bundle(panel, config, train_models(panel, config));
}

void write_forecasts(const ForecastSet& set, const SalesPanel& panel, const std::string& path) {
  csv::Writer w(path, kModule);
  w.row({"series_id", "day", "raw_weight", "allocated_forecast"});
  for (std::size_t r = 0; r < set.raw.size(); ++r)
    for (int d = 0; d < set.horizon; ++d)
      w.row({panel.series[r].id, std::to_string(set.train_end + d + 1),
             fmt_double(set.raw[r][static_cast<std::size_t>(d)]),
             fmt_double(set.allocated[r][static_cast<std::size_t>(d)])});
}

void write_totals(const ForecastSet& set, const std::string& path) {
  csv::Writer w(path, kModule);
  w.row({"group_id", "subgroup", "day", "G"});
  for (const GroupForecast& gf : set.groups)
    for (const auto& [unit, totals] : gf.totals)
      for (int d = 0; d < set.horizon; ++d)
        w.row({gf.id, unit < 0 ? "joint" : std::to_string(unit),
               std::to_string(set.train_end + d + 1),
               fmt_double(totals[static_cast<std::size_t>(d)])});
}

}  // namespace hiercast
