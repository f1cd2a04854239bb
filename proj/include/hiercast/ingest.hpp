#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiercast/series_key.hpp"

namespace hiercast {

struct CalendarDay {
  std::string date;   // YYYY-MM-DD
  int day_index = 0;  // 1-based, contiguous
  int weekday = 0;    // 1..7, cycles with the dates
  int month = 0;      // 1..12
  int year = 0;
  int week_id = -1;   // wm_yr_wk, -1 when absent
  std::string event_name;  // empty when no event
};

struct Calendar {
  std::vector<CalendarDay> days;
  // state id -> one flag per day (from snap_<STATE> columns)
  std::map<std::string, std::vector<std::uint8_t>> snap;

  int size() const { return static_cast<int>(days.size()); }
  bool snap_flag(const std::string& state, int day_index) const;
  // day index -> event label, for days that carry one
  std::map<int, std::string> event_labels() const;
  // Continues dates/weekday/month arithmetically out to n_days; added days
  // carry no events and no snap flags.
  Calendar extended_to(int n_days) const;
};

// Weekly sell prices per (store, item).
struct PriceTable {
  std::map<std::pair<std::string, std::string>, std::map<int, double>> by_store_item;

  bool empty() const { return by_store_item.empty(); }
  std::optional<double> price(const std::string& store, const std::string& item,
                              int week_id) const;
};

// Bottom-level wide matrix: one row per (item, store), one column per day.
struct SalesPanel {
  std::vector<SeriesInfo> series;
  std::vector<std::vector<double>> values;  // non-negative integers stored as double
  Calendar calendar;                        // may be empty until attached
  PriceTable prices;                        // optional

  int num_series() const { return static_cast<int>(series.size()); }
  int num_days() const { return series.empty() ? 0 : static_cast<int>(values[0].size()); }
  int find_series(const std::string& id) const;  // -1 when absent
  // Day-wise price for one row (week id resolved through the calendar);
  // NaN where no price is known.
  std::vector<double> day_prices(int row) const;
};

struct Hierarchy {
  // Deterministic order: map keys sort by (level, ids).
  std::map<SeriesKey, std::vector<double>> series;
  std::array<int, kNumLevels> level_counts{};
};

SalesPanel parse_wide_sales(const std::string& path);
Calendar parse_calendar(const std::string& path);
PriceTable parse_prices(const std::string& path);

// Attaches calendar (and optional prices) to the panel; the calendar must
// cover every day column.
void attach(SalesPanel& panel, Calendar calendar, PriceTable prices = {});

Hierarchy build_hierarchy(const SalesPanel& panel);
// Same aggregation over arbitrary bottom-level vectors (e.g. forecasts).
Hierarchy aggregate_rows(const std::vector<SeriesInfo>& series,
                         const std::vector<std::vector<double>>& rows);

void write_wide_sales(const SalesPanel& panel, const std::string& path);
void write_calendar(const Calendar& calendar, const std::string& path);
void write_prices(const PriceTable& prices, const std::string& path);

}  // namespace hiercast
