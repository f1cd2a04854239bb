#include "hiercast/synth.hpp"

#include <cmath>
#include <filesystem>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/rng.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "synth";
constexpr double kTwoPi = 6.283185307179586476925286766559;
// First sale day of the M5 release, a Saturday; weekday numbering starts
// there.
constexpr int kStartYear = 2011;
constexpr int kStartMonth = 1;
constexpr int kStartDay = 29;
constexpr int kFirstWeekId = 11101;

void validate(const SynthSpec& spec) {
  if (spec.n_items < 1 || spec.n_stores < 1 || spec.n_states < 1 || spec.n_categories < 1 ||
      spec.n_departments < 1)
    throw ConfigError(kModule, "all entity counts must be >= 1");
  if (spec.days < 28) throw ConfigError(kModule, "days must be >= 28");
  if (spec.zero_inflation < 0.0 || spec.zero_inflation >= 1.0)
    throw ConfigError(kModule, "zero_inflation must be in [0, 1)");
  if (spec.trend_fraction < 0.0 || spec.trend_fraction > 1.0)
    throw ConfigError(kModule, "trend_fraction must be in [0, 1]");
  if (spec.n_states > spec.n_stores)
    throw ConfigError(kModule, "need at least one store per state");
  if (spec.n_categories > spec.n_departments)
    throw ConfigError(kModule, "need at least one department per category");
  if (spec.n_departments > spec.n_items)
    throw ConfigError(kModule, "need at least one item per department");
}

Calendar make_calendar(const SynthSpec& spec) {
  Calendar cal;
  const long long start = days_from_civil(kStartYear, kStartMonth, kStartDay);
  for (int d = 1; d <= spec.days; ++d) {
    CalendarDay day;
    int y, m, dd;
    split_date(start + d - 1, y, m, dd);
    day.date = format_date(y, m, dd);
    day.day_index = d;
    day.weekday = (d - 1) % 7 + 1;  // Saturday = 1
    day.month = m;
    day.year = y;
    day.week_id = kFirstWeekId + (d - 1) / 7;
    if (spec.holiday_every > 0 && d % spec.holiday_every == 0)
      day.event_name = (d / spec.holiday_every) % 2 == 0 ? "EVENT_A" : "EVENT_B";
    cal.days.push_back(std::move(day));
  }
  return cal;
}

std::string pad(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}
}  // namespace

SynthResult generate(const SynthSpec& spec) {
  validate(spec);
  SynthResult out;
  out.panel.calendar = make_calendar(spec);

  // snap pattern: 3 active days in every rotating 10-day window per state.
  for (int s = 0; s < spec.n_states; ++s) {
    auto& flags = out.panel.calendar.snap["ST" + std::to_string(s)];
    flags.resize(static_cast<std::size_t>(spec.days));
    for (int d = 1; d <= spec.days; ++d)
      flags[static_cast<std::size_t>(d - 1)] = (d + s) % 10 < 3 ? 1 : 0;
  }

  const int n_series = spec.n_items * spec.n_stores;
  out.panel.series.reserve(static_cast<std::size_t>(n_series));
  out.panel.values.reserve(static_cast<std::size_t>(n_series));
  out.archetypes.reserve(static_cast<std::size_t>(n_series));

  for (int item = 0; item < spec.n_items; ++item) {
    const int dept = item % spec.n_departments;
    const int cat = dept % spec.n_categories;
    const std::string cat_id = "CAT" + std::to_string(cat);
    const std::string dept_id = cat_id + "_" + std::to_string(dept);
    const std::string item_id = dept_id + "_" + pad(item, 4);
    for (int store = 0; store < spec.n_stores; ++store) {
      const int state = store % spec.n_states;
      const std::string state_id = "ST" + std::to_string(state);
      const std::string store_id = state_id + "_" + std::to_string(store);
      const int row = item * spec.n_stores + store;

      SeriesInfo info;
      info.item_id = item_id;
      info.dept_id = dept_id;
      info.cat_id = cat_id;
      info.store_id = store_id;
      info.state_id = state_id;
      info.id = item_id + "_" + store_id;

      // floor((r+1)f) - floor(rf) spreads the trend archetype evenly.
      SeriesArchetype arch;
      arch.trend_dominant =
          static_cast<long long>(std::floor((row + 1) * spec.trend_fraction)) >
          static_cast<long long>(std::floor(row * spec.trend_fraction));

      Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(row)));
      arch.base = rng.uniform(spec.base_min, spec.base_max);
      if (arch.trend_dominant) {
        arch.slope = rng.uniform(spec.slope_min, spec.slope_max);
        arch.amplitude = rng.uniform(0.0, spec.trend_amp_max);
      } else {
        arch.slope = rng.uniform(0.0, spec.seasonal_slope_max);
        arch.amplitude = rng.uniform(spec.amp_min, spec.amp_max);
      }
      arch.spike = spec.holiday_spike > 0.0
                       ? spec.holiday_spike * rng.uniform(0.5, 1.5)
                       : 0.0;

      std::vector<double> y(static_cast<std::size_t>(spec.days));
      for (int t = 1; t <= spec.days; ++t) {
        double v = arch.base + arch.slope * t + arch.amplitude * std::sin(kTwoPi * t / 7.0);
        if (!out.panel.calendar.days[static_cast<std::size_t>(t - 1)].event_name.empty())
          v += arch.spike;
        if (spec.noise > 0.0) v += spec.noise * rng.normal();
        double sales = std::round(std::max(0.0, v));
        if (spec.zero_inflation > 0.0 && rng.bernoulli(spec.zero_inflation)) sales = 0.0;
        y[static_cast<std::size_t>(t - 1)] = sales;
      }
      out.panel.series.push_back(std::move(info));
      out.panel.values.push_back(std::move(y));
      out.archetypes.push_back(arch);
    }
  }

  if (spec.with_prices) {
    const int n_weeks = (spec.days + 6) / 7;
    for (int item = 0; item < spec.n_items; ++item)
      for (int store = 0; store < spec.n_stores; ++store) {
        const int row = item * spec.n_stores + store;
        Rng rng(mix_seed(spec.seed, 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(row)));
        const double price = std::round(rng.uniform(1.0, 10.0) * 100.0) / 100.0;
        const SeriesInfo& info = out.panel.series[static_cast<std::size_t>(row)];
        auto& weeks = out.panel.prices.by_store_item[{info.store_id, info.item_id}];
        for (int w = 0; w < n_weeks; ++w) weeks[kFirstWeekId + w] = price;
      }
  }
  return out;
}

void write_synth(const SynthResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_wide_sales(result.panel, (base / "sales.csv").string());
  write_calendar(result.panel.calendar, (base / "calendar.csv").string());
  if (!result.panel.prices.empty())
    write_prices(result.panel.prices, (base / "prices.csv").string());
  csv::Writer w((base / "archetypes.csv").string(), kModule);
  w.row({"series_id", "group", "base", "slope", "amplitude", "spike"});
  for (std::size_t i = 0; i < result.archetypes.size(); ++i) {
    const SeriesArchetype& a = result.archetypes[i];
    w.row({result.panel.series[i].id, a.trend_dominant ? "trend" : "seasonality",
           fmt_double(a.base), fmt_double(a.slope), fmt_double(a.amplitude),
           fmt_double(a.spike)});
  }
}

}  // namespace hiercast
