#include "hiercast/run_config.hpp"

#include <fstream>

#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "config";

struct DefaultEntry {
  const char* section;
  const char* key;
  const char* value;
};

// The single source of truth for the configuration schema.
const DefaultEntry kDefaults[] = {
    {"data", "sales", ""},
    {"data", "calendar", ""},
    {"data", "prices", ""},
    {"run", "seed", "1"},
    {"run", "threads", "1"},
    {"run", "out", "runs"},
    {"run", "horizon", "28"},
    {"run", "train_end", "0"},
    {"group", "by", "store"},
    {"group", "ts_split", "true"},
    {"group", "score_at_aggregate", "false"},
    {"group", "min_subgroup", "5"},
    {"group", "per_subgroup_normalization", "false"},
    {"decompose", "period", "7"},
    {"features", "lags", "7,14,28"},
    {"features", "windows", "7,28"},
    {"features", "use_calendar", "true"},
    {"features", "use_price", "true"},
    {"features", "horizon_as_feature", "true"},
    {"gbm", "loss", "tweedie"},
    {"gbm", "tweedie_power", "1.5"},
    {"gbm", "rounds", "300"},
    {"gbm", "learning_rate", "0.1"},
    {"gbm", "max_leaves", "31"},
    {"gbm", "min_data_in_leaf", "20"},
    {"gbm", "max_bins", "63"},
    {"gbm", "lambda", "1.0"},
    {"gbm", "goss", "false"},
    {"gbm", "goss_top_rate", "0.2"},
    {"gbm", "goss_other_rate", "0.1"},
    {"trend", "n_changepoints", "10"},
    {"trend", "weekly_order", "3"},
    {"trend", "yearly_order", "5"},
    {"trend", "yearly_min_days", "400"},
    {"trend", "ridge_lambda", "1.0"},
    {"evaluate", "window", "28"},
    {"synth", "n_items", "10"},
    {"synth", "n_stores", "2"},
    {"synth", "n_states", "2"},
    {"synth", "n_categories", "2"},
    {"synth", "n_departments", "2"},
    {"synth", "days", "120"},
    {"synth", "trend_fraction", "0.5"},
    {"synth", "base_min", "2"},
    {"synth", "base_max", "8"},
    {"synth", "slope_min", "0.01"},
    {"synth", "slope_max", "0.05"},
    {"synth", "trend_amp_max", "0.2"},
    {"synth", "amp_min", "1"},
    {"synth", "amp_max", "3"},
    {"synth", "seasonal_slope_max", "0.002"},
    {"synth", "holiday_spike", "0"},
    {"synth", "holiday_every", "0"},
    {"synth", "zero_inflation", "0"},
    {"synth", "noise", "0.3"},
    {"synth", "with_prices", "false"},
};
}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig config;
  for (const DefaultEntry& e : kDefaults) config.values_[e.section][e.key] = e.value;
  return config;
}

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(kModule, "cannot open config file " + path);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(kModule, path + ":" + std::to_string(line_no) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      if (!values_.count(section))
        throw ConfigError(kModule, "unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(kModule, path + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(kModule, path + ":" + std::to_string(line_no) + ": key outside a section");
    auto sec = values_.find(section);
    if (sec == values_.end() || !sec->second.count(key))
      throw ConfigError(kModule, "unknown key '" + section + "." + key + "'");
    sec->second[key] = value;
  }
}

void RunConfig::set(const std::string& dotted_key, const std::string& value) {
  const std::size_t dot = dotted_key.find('.');
  if (dot == std::string::npos)
    throw ConfigError(kModule, "expected section.key, got '" + dotted_key + "'");
  const std::string section = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  auto sec = values_.find(section);
  if (sec == values_.end() || !sec->second.count(key))
    throw ConfigError(kModule, "unknown key '" + section + "." + key + "'");
  sec->second[key] = value;
}

const std::string& RunConfig::get(const std::string& section, const std::string& key) const {
  auto sec = values_.find(section);
  if (sec == values_.end())
    throw ConfigError(kModule, "unknown section '" + section + "'");
  auto it = sec->second.find(key);
  if (it == sec->second.end())
    throw ConfigError(kModule, "unknown key '" + section + "." + key + "'");
  return it->second;
}

long long RunConfig::get_int(const std::string& section, const std::string& key) const {
  auto v = parse_int(get(section, key));
  if (!v) throw ConfigError(kModule, section + "." + key + ": expected an integer");
  return *v;
}

double RunConfig::get_real(const std::string& section, const std::string& key) const {
  auto v = parse_real(get(section, key));
  if (!v) throw ConfigError(kModule, section + "." + key + ": expected a number");
  return *v;
}

bool RunConfig::get_bool(const std::string& section, const std::string& key) const {
  const std::string v = lower(get(section, key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(kModule, section + "." + key + ": expected a boolean");
}

std::vector<int> RunConfig::get_int_list(const std::string& section,
                                         const std::string& key) const {
  std::vector<int> out;
  for (const std::string& part : get_list(section, key)) {
    auto v = parse_int(part);
    if (!v) throw ConfigError(kModule, section + "." + key + ": expected integers");
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

std::vector<std::string> RunConfig::get_list(const std::string& section,
                                             const std::string& key) const {
  std::vector<std::string> out;
  for (const std::string& part : split(get(section, key), ',')) {
    const std::string p = trim(part);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [section, keys] : values_) {
    out += "[" + section + "]\n";
    for (const auto& [key, value] : keys) {
      // Thread count and output base change where and how fast a run
      // executes, never what it computes, so they stay out of the hash.
      if (section == "run" && (key == "threads" || key == "out")) continue;
      out += key + " = " + value + "\n";
    }
  }
  return out;
}

std::string RunConfig::hash() const { return hex64(fnv1a(canonical())); }

PipelineConfig RunConfig::pipeline_config() const {
  PipelineConfig p;
  p.group_by = get_list("group", "by");
  p.ts_split = get_bool("group", "ts_split");
  p.score_at_aggregate = get_bool("group", "score_at_aggregate");
  p.min_subgroup = static_cast<int>(get_int("group", "min_subgroup"));
  p.per_subgroup_normalization = get_bool("group", "per_subgroup_normalization");
  p.horizon = static_cast<int>(get_int("run", "horizon"));
  p.train_end = static_cast<int>(get_int("run", "train_end"));
  p.decompose_period = static_cast<int>(get_int("decompose", "period"));
  p.seed = static_cast<std::uint64_t>(get_int("run", "seed"));
  p.threads = static_cast<int>(get_int("run", "threads"));

  p.features.lags = get_int_list("features", "lags");
  p.features.windows = get_int_list("features", "windows");
  p.features.use_calendar = get_bool("features", "use_calendar");
  p.features.use_price = get_bool("features", "use_price");
  p.features.horizon_as_feature = get_bool("features", "horizon_as_feature");
  p.features.horizon = p.horizon;

  const std::string loss = lower(get("gbm", "loss"));
  if (loss == "tweedie")
    p.gbm.loss = LossKind::Tweedie;
  else if (loss == "mse")
    p.gbm.loss = LossKind::MSE;
  else
    throw ConfigError(kModule, "gbm.loss: expected tweedie or mse");
  p.gbm.tweedie_power = get_real("gbm", "tweedie_power");
  p.gbm.rounds = static_cast<int>(get_int("gbm", "rounds"));
  p.gbm.learning_rate = get_real("gbm", "learning_rate");
  p.gbm.max_leaves = static_cast<int>(get_int("gbm", "max_leaves"));
  p.gbm.min_data_in_leaf = static_cast<int>(get_int("gbm", "min_data_in_leaf"));
  p.gbm.max_bins = static_cast<int>(get_int("gbm", "max_bins"));
  p.gbm.lambda = get_real("gbm", "lambda");
  p.gbm.goss = get_bool("gbm", "goss");
  p.gbm.goss_top_rate = get_real("gbm", "goss_top_rate");
  p.gbm.goss_other_rate = get_real("gbm", "goss_other_rate");

  p.trend.n_changepoints = static_cast<int>(get_int("trend", "n_changepoints"));
  p.trend.weekly_order = static_cast<int>(get_int("trend", "weekly_order"));
  p.trend.yearly_order = static_cast<int>(get_int("trend", "yearly_order"));
  p.trend.yearly_min_days = static_cast<int>(get_int("trend", "yearly_min_days"));
  p.trend.ridge_lambda = get_real("trend", "ridge_lambda");
  return p;
}

SynthSpec RunConfig::synth_spec() const {
  SynthSpec s;
  s.n_items = static_cast<int>(get_int("synth", "n_items"));
  s.n_stores = static_cast<int>(get_int("synth", "n_stores"));
  s.n_states = static_cast<int>(get_int("synth", "n_states"));
  s.n_categories = static_cast<int>(get_int("synth", "n_categories"));
  s.n_departments = static_cast<int>(get_int("synth", "n_departments"));
  s.days = static_cast<int>(get_int("synth", "days"));
  s.trend_fraction = get_real("synth", "trend_fraction");
  s.base_min = get_real("synth", "base_min");
  s.base_max = get_real("synth", "base_max");
  s.slope_min = get_real("synth", "slope_min");
  s.slope_max = get_real("synth", "slope_max");
  s.trend_amp_max = get_real("synth", "trend_amp_max");
  s.amp_min = get_real("synth", "amp_min");
  s.amp_max = get_real("synth", "amp_max");
  s.seasonal_slope_max = get_real("synth", "seasonal_slope_max");
  s.holiday_spike = get_real("synth", "holiday_spike");
  s.holiday_every = static_cast<int>(get_int("synth", "holiday_every"));
  s.zero_inflation = get_real("synth", "zero_inflation");
  s.noise = get_real("synth", "noise");
  s.with_prices = get_bool("synth", "with_prices");
  s.seed = static_cast<std::uint64_t>(get_int("run", "seed"));
  return s;
}

}  // namespace hiercast
