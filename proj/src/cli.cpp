#include "hiercast/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiercast/csv.hpp"
#include "hiercast/decompose.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/evaluate.hpp"
#include "hiercast/pipeline.hpp"
#include "hiercast/run_config.hpp"
#include "hiercast/synth.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kModule = "cli";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(kModule, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

std::string file_hash(const std::string& path) { return hex64(fnv1a(read_file(path))); }

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '-';
  return out;
}

fs::path ensure_dir(const fs::path& dir) {
  fs::create_directories(dir);
  return dir;
}

SalesPanel load_panel(const RunConfig& config) {
  const std::string sales = config.get("data", "sales");
  const std::string calendar = config.get("data", "calendar");
  if (sales.empty()) throw ConfigError(kModule, "data.sales: path required");
  if (calendar.empty()) throw ConfigError(kModule, "data.calendar: path required");
  SalesPanel panel = parse_wide_sales(sales);
  Calendar cal = parse_calendar(calendar);
  PriceTable prices;
  const std::string price_path = config.get("data", "prices");
  if (!price_path.empty()) prices = parse_prices(price_path);
  attach(panel, std::move(cal), std::move(prices));
  return panel;
}

// Echo of the resolved configuration. Skips the same keys the canonical
// form skips (run.threads, run.out) so a run directory's bytes do not
// depend on where it lives or how many threads produced it.
json config_json(const RunConfig& config) {
  json j = json::object();
  for (const auto& [section, keys] : config.sections()) {
    json sec = json::object();
    for (const auto& [key, value] : keys) {
      if (section == "run" && (key == "threads" || key == "out")) continue;
      sec[key] = value;
    }
    j[section] = sec;
  }
  return j;
}

json inputs_json(const RunConfig& config) {
  json j = json::object();
  for (const char* key : {"sales", "calendar", "prices"}) {
    const std::string path = config.get("data", key);
    if (path.empty()) continue;
    j[key] = {{"path", path}, {"fnv1a", file_hash(path)}};
  }
  return j;
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(kModule, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

void save_bundle(const TrainedBundle& bundle, const SalesPanel& panel, const RunConfig& config,
                 const fs::path& run_dir) {
  ensure_dir(run_dir / "models");
  ensure_dir(run_dir / "provenance");
  json groups = json::array();
  for (const TrainedGroup& group : bundle.groups) {
    json g;
    g["id"] = group.id;
    json series = json::array();
    for (int r : group.rows) series.push_back(panel.series[static_cast<std::size_t>(r)].id);
    g["series"] = series;
    g["subgroup"] = group.subgroup;
    json ts = json::array(), ss = json::array();
    for (const StrengthScores& s : group.scores) {
      ts.push_back(s.trend_score);
      ss.push_back(s.seasonality_score);
    }
    g["trend_score"] = ts;
    g["seasonality_score"] = ss;
    g["notes"] = group.notes;
    json models = json::object();
    for (const auto& [sub, model] : group.models) {
      const std::string rel =
          "models/gbm_" + sanitize(group.id) + "_" + std::to_string(sub) + ".txt";
      save_model(model, (run_dir / rel).string());
      models[std::to_string(sub)] = rel;
    }
    g["models"] = models;
    groups.push_back(std::move(g));
  }
  json j;
  j["config_hash"] = config.hash();
  j["train_end"] = bundle.train_end;
  j["groups"] = groups;
  write_json(j, run_dir / "provenance" / "bundle.json");
}

TrainedBundle load_bundle(const SalesPanel& panel, const fs::path& run_dir) {
  const fs::path path = run_dir / "provenance" / "bundle.json";
  json j;
  {
    std::ifstream in(path);
    if (!in) throw IoError(kModule, "cannot open " + path.string() + "; run train first");
    in >> j;
  }
  std::map<std::string, int> row_of;
  for (int i = 0; i < panel.num_series(); ++i)
    row_of[panel.series[static_cast<std::size_t>(i)].id] = i;

  TrainedBundle bundle;
  bundle.train_end = j.at("train_end").get<int>();
  for (const json& g : j.at("groups")) {
    TrainedGroup group;
    group.id = g.at("id").get<std::string>();
    for (const json& sid : g.at("series")) {
      auto it = row_of.find(sid.get<std::string>());
      if (it == row_of.end())
        throw CoverageError(kModule,
                            "bundle series " + sid.get<std::string>() + " missing from the panel");
      group.rows.push_back(it->second);
    }
    group.subgroup = g.at("subgroup").get<std::vector<int>>();
    const auto ts = g.at("trend_score").get<std::vector<double>>();
    const auto ss = g.at("seasonality_score").get<std::vector<double>>();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      StrengthScores s;
      s.trend_score = ts[i];
      s.seasonality_score = ss[i];
      s.group = s.trend_score >= s.seasonality_score ? SeriesGroup::TrendType
                                                     : SeriesGroup::SeasonalityType;
      group.scores.push_back(s);
    }
    group.notes = g.at("notes").get<std::vector<std::string>>();
    for (const auto& [sub, rel] : g.at("models").items())
      group.models[*parse_int(sub)] = load_model((run_dir / rel.get<std::string>()).string());
    bundle.groups.push_back(std::move(group));
  }
  return bundle;
}

void cmd_synth(const RunConfig& config, const fs::path& run_dir) {
  const SynthResult result = generate(config.synth_spec());
  write_synth(result, (run_dir / "data").string());
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  json outputs = json::array();
  for (const char* name : {"sales.csv", "calendar.csv", "archetypes.csv"})
    outputs.push_back((run_dir / "data" / name).string());
  if (!result.panel.prices.empty())
    outputs.push_back((run_dir / "data" / "prices.csv").string());
  j["outputs"] = outputs;
  write_json(j, ensure_dir(run_dir / "provenance") / "synth.json");
}

void cmd_decompose(const RunConfig& config, const fs::path& run_dir,
                   const std::vector<std::string>& selected) {
  const SalesPanel panel = load_panel(config);
  const int period = static_cast<int>(config.get_int("decompose", "period"));
  const std::map<int, std::string> holidays = panel.calendar.event_labels();
  const fs::path reports = ensure_dir(run_dir / "reports");

  std::map<std::string, int> row_of;
  for (int i = 0; i < panel.num_series(); ++i)
    row_of[panel.series[static_cast<std::size_t>(i)].id] = i;
  for (const std::string& sid : selected)
    if (!row_of.count(sid)) throw CoverageError(kModule, "unknown series id " + sid);

  csv::Writer scores_csv((reports / "scores.csv").string(), kModule);
  scores_csv.row({"series_id", "trend_score", "seasonality_score", "group"});
  for (int i = 0; i < panel.num_series(); ++i) {
    const Components c =
        decompose(panel.values[static_cast<std::size_t>(i)], period, holidays);
    const StrengthScores s = strength_scores(c);
    const std::string& sid = panel.series[static_cast<std::size_t>(i)].id;
    scores_csv.row({sid, fmt_double(s.trend_score), fmt_double(s.seasonality_score),
                    group_name(s.group)});
    const bool dump =
        std::find(selected.begin(), selected.end(), sid) != selected.end();
    if (!dump) continue;
    csv::Writer comp((reports / ("components_" + sanitize(sid) + ".csv")).string(), kModule);
    comp.row({"day", "observed", "trend", "seasonal", "holiday", "residual"});
    for (int t = 1; t <= panel.num_days(); ++t)
      comp.row({std::to_string(t),
                fmt_double(panel.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(t - 1)]),
                fmt_double(c.trend[static_cast<std::size_t>(t - 1)]),
                fmt_double(c.seasonal[static_cast<std::size_t>(t - 1)]),
                fmt_double(c.holiday[static_cast<std::size_t>(t - 1)]),
                fmt_double(c.residual[static_cast<std::size_t>(t - 1)])});
  }
}

void cmd_train(const RunConfig& config, const fs::path& run_dir) {
  const SalesPanel panel = load_panel(config);
  const TrainedBundle bundle = train_models(panel, config.pipeline_config());
  save_bundle(bundle, panel, config, run_dir);
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  j["inputs"] = inputs_json(config);
  write_json(j, run_dir / "provenance" / "train.json");
}

ForecastSet forecast_stage(const RunConfig& config, const SalesPanel& panel,
                           const TrainedBundle& bundle, const fs::path& run_dir) {
  const ForecastSet fc = forecast_from_bundle(panel, config.pipeline_config(), bundle);
  ensure_dir(run_dir / "forecasts");
  write_forecasts(fc, panel, (run_dir / "forecasts" / "forecasts.csv").string());
  write_totals(fc, (run_dir / "forecasts" / "totals.csv").string());
  json j;
  j["config_hash"] = config.hash();
  j["inputs"] = inputs_json(config);
  j["train_end"] = fc.train_end;
  j["horizon"] = fc.horizon;
  j["warnings"] = fc.warnings;
  write_json(j, ensure_dir(run_dir / "provenance") / "forecast.json");
  return fc;
}

void evaluate_stage(const RunConfig& config, const SalesPanel& panel, int train_end,
                    const std::vector<std::vector<double>>& forecasts,
                    const fs::path& run_dir) {
  const int window = static_cast<int>(config.get_int("evaluate", "window"));
  const MetricReport report = wrmsse_report(panel, train_end, forecasts, window);
  const fs::path reports = ensure_dir(run_dir / "reports");
  write_report_csv(report, (reports / "report.csv").string());
  write_report_json(report, (reports / "report.json").string());
  std::ofstream summary(reports / "summary.txt");
  summary << "WRMSSE=" << fmt_double(report.wrmsse) << "\n";
  std::cout << "WRMSSE=" << fmt_double(report.wrmsse) << "\n";
}

void cmd_forecast(const RunConfig& config, const fs::path& run_dir) {
  const SalesPanel panel = load_panel(config);
  const TrainedBundle bundle = load_bundle(panel, run_dir);
  forecast_stage(config, panel, bundle, run_dir);
}

// Forecast CSV back to per-panel-row allocated vectors for evaluation.
std::vector<std::vector<double>> load_forecast_rows(const SalesPanel& panel,
                                                    const std::string& path, int train_end,
                                                    int horizon) {
  csv::Reader reader(path, kModule);
  const int c_sid = reader.require("series_id");
  const int c_day = reader.require("day");
  const int c_alloc = reader.require("allocated_forecast");
  std::map<std::string, int> row_of;
  for (int i = 0; i < panel.num_series(); ++i)
    row_of[panel.series[static_cast<std::size_t>(i)].id] = i;

  std::vector<std::vector<double>> out(
      static_cast<std::size_t>(panel.num_series()),
      std::vector<double>(static_cast<std::size_t>(horizon),
                          std::numeric_limits<double>::quiet_NaN()));
  std::vector<std::string> row;
  while (reader.next(row)) {
    const std::string& sid = row[static_cast<std::size_t>(c_sid)];
    auto it = row_of.find(sid);
    if (it == row_of.end())
      throw CoverageError(kModule, path + ": forecast series " + sid + " not in the panel");
    const auto day = parse_int(row[static_cast<std::size_t>(c_day)]);
    const auto value = parse_real(row[static_cast<std::size_t>(c_alloc)]);
    if (!day || !value)
      throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) + ": bad row");
    const long long d = *day - train_end;
    if (d < 1 || d > horizon)
      throw ValueError(kModule, path + ": day " + std::to_string(*day) +
                                    " outside the evaluation window");
    out[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(d - 1)] = *value;
  }
  std::vector<std::string> missing;
  for (int i = 0; i < panel.num_series(); ++i)
    for (double v : out[static_cast<std::size_t>(i)])
      if (std::isnan(v)) {
        missing.push_back(panel.series[static_cast<std::size_t>(i)].id);
        break;
      }
  if (!missing.empty())
    throw CoverageError(kModule, "forecasts missing for: " + join(missing, ','));
  return out;
}

void cmd_evaluate(const RunConfig& config, const fs::path& run_dir,
                  std::string forecasts_path) {
  const SalesPanel panel = load_panel(config);
  const int train_end = static_cast<int>(config.get_int("run", "train_end"));
  const int horizon = static_cast<int>(config.get_int("run", "horizon"));
  if (train_end < 1)
    throw ConfigError(kModule, "run.train_end must be set for evaluation");
  if (forecasts_path.empty())
    forecasts_path = (run_dir / "forecasts" / "forecasts.csv").string();
  const std::vector<std::vector<double>> forecasts =
      load_forecast_rows(panel, forecasts_path, train_end, horizon);
  evaluate_stage(config, panel, train_end, forecasts, run_dir);
}

void cmd_pipeline(const RunConfig& config, const fs::path& run_dir) {
  const SalesPanel panel = load_panel(config);
  const TrainedBundle bundle = train_models(panel, config.pipeline_config());
  save_bundle(bundle, panel, config, run_dir);
  const ForecastSet fc = forecast_stage(config, panel, bundle, run_dir);
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  j["inputs"] = inputs_json(config);
  j["warnings"] = fc.warnings;
  write_json(j, run_dir / "provenance" / "run.json");
  if (fc.train_end > 0 && fc.train_end + fc.horizon <= panel.num_days() &&
      fc.train_end < panel.num_days())
    evaluate_stage(config, panel, fc.train_end, fc.allocated, run_dir);
}

void cmd_plotdata(const RunConfig& config, const fs::path& run_dir, const std::string& figure) {
  const std::string sales = config.get("data", "sales");
  if (sales.empty()) throw ConfigError(kModule, "data.sales: path required");
  const SalesPanel panel = parse_wide_sales(sales);
  const fs::path plotdata = ensure_dir(run_dir / "plotdata");
  if (figure == "totals") {
    csv::Writer w((plotdata / "totals.csv").string(), kModule);
    w.row({"day", "total"});
    for (int t = 1; t <= panel.num_days(); ++t) {
      double acc = 0.0;
      for (int i = 0; i < panel.num_series(); ++i)
        acc += panel.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(t - 1)];
      w.row({std::to_string(t), fmt_double(acc)});
    }
  } else if (figure == "store-trends") {
    std::map<std::string, std::vector<double>> per_store;
    for (int i = 0; i < panel.num_series(); ++i) {
      auto& acc = per_store[panel.series[static_cast<std::size_t>(i)].store_id];
      acc.resize(static_cast<std::size_t>(panel.num_days()), 0.0);
      for (int t = 0; t < panel.num_days(); ++t)
        acc[static_cast<std::size_t>(t)] +=
            panel.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    }
    csv::Writer w((plotdata / "store_trends.csv").string(), kModule);
    w.row({"store_id", "day", "sales"});
    for (const auto& [store, series] : per_store)
      for (int t = 1; t <= panel.num_days(); ++t)
        w.row({store, std::to_string(t), fmt_double(series[static_cast<std::size_t>(t - 1)])});
  } else if (figure == "sales-histogram") {
    std::map<long long, long long> counts;
    for (const auto& row : panel.values)
      for (double v : row) ++counts[static_cast<long long>(v)];
    csv::Writer w((plotdata / "sales_histogram.csv").string(), kModule);
    w.row({"value", "count"});
    for (const auto& [value, count] : counts)
      w.row({std::to_string(value), std::to_string(count)});
  } else {
    throw ConfigError(kModule,
                      "unknown figure '" + figure +
                          "' (expected totals, store-trends or sales-histogram)");
  }
}

int report_error(const char* kind, const std::string& module, const std::string& message,
                 int code) {
  json j;
  j["error"] = kind;
  j["module"] = module;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  return code;
}
}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"hierarchical retail sales forecasting pipeline"};
  app.require_subcommand(1);
  // Global options remain usable after the subcommand name.
  app.fallthrough(true);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string seed, threads, out_dir;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--set", overrides, "override a key: section.key=value");
  app.add_option("--seed", seed, "shorthand for run.seed");
  app.add_option("--threads", threads, "shorthand for run.threads");
  app.add_option("--out", out_dir, "shorthand for run.out");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic panel");
  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "per-series components and strength scores");
  std::vector<std::string> selected_series;
  decompose_cmd->add_option("--series", selected_series, "dump components for these series ids");
  CLI::App* train = app.add_subcommand("train", "train per-group boosted models");
  CLI::App* forecast = app.add_subcommand("forecast", "forecast from trained models");
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score forecasts against the panel");
  std::string forecasts_path;
  evaluate_cmd->add_option("--forecasts", forecasts_path, "forecast CSV to score");
  CLI::App* pipeline_cmd = app.add_subcommand("pipeline", "train, forecast and evaluate");
  CLI::App* plotdata = app.add_subcommand("plotdata", "tidy CSVs for standard figures");
  std::string figure;
  plotdata->add_option("--figure", figure, "totals | store-trends | sales-histogram")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report_error("config", kModule, std::string("argument error: ") + e.what(), 2);
  }

  try {
    RunConfig config = RunConfig::defaults();
    if (!config_path.empty()) config.merge_file(config_path);
    for (const std::string& kv : overrides) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw ConfigError(kModule, "--set expects section.key=value, got '" + kv + "'");
      config.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    if (!seed.empty()) config.set("run.seed", seed);
    if (!threads.empty()) config.set("run.threads", threads);
    if (!out_dir.empty()) config.set("run.out", out_dir);

    const fs::path run_dir = ensure_dir(fs::path(config.get("run", "out")) / config.hash());
    std::cout << "run_dir=" << run_dir.string() << "\n";

    if (synth->parsed())
      cmd_synth(config, run_dir);
    else if (decompose_cmd->parsed())
      cmd_decompose(config, run_dir, selected_series);
    else if (train->parsed())
      cmd_train(config, run_dir);
    else if (forecast->parsed())
      cmd_forecast(config, run_dir);
    else if (evaluate_cmd->parsed())
      cmd_evaluate(config, run_dir, forecasts_path);
    else if (pipeline_cmd->parsed())
      cmd_pipeline(config, run_dir);
    else if (plotdata->parsed())
      cmd_plotdata(config, run_dir, figure);
    return 0;
  } catch (const ConfigError& e) {
    return report_error("config", e.module(), e.what(), 2);
  } catch (const Error& e) {
    return report_error("data", e.module(), e.what(), 3);
  } catch (const std::exception& e) {
    return report_error("internal", kModule, e.what(), 4);
  }
}

}  // namespace hiercast
