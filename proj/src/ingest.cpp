#include "hiercast/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hiercast/csv.hpp"
#include "hiercast/errors.hpp"
#include "hiercast/util.hpp"

namespace hiercast {

namespace {
constexpr const char* kModule = "ingest";

int weekday_from_name(const std::string& name) {
  // Saturday-first numbering, matching the usual retail calendar files.
  static const std::pair<const char*, int> names[] = {
      {"saturday", 1}, {"sunday", 2}, {"monday", 3},   {"tuesday", 4},
      {"wednesday", 5}, {"thursday", 6}, {"friday", 7},
  };
  const std::string low = lower(name);
  for (auto& [n, v] : names)
    if (low == n) return v;
  return -1;
}
}  // namespace

bool Calendar::snap_flag(const std::string& state, int day_index) const {
  auto it = snap.find(state);
  if (it == snap.end()) return false;
  if (day_index < 1 || day_index > static_cast<int>(it->second.size())) return false;
  return it->second[static_cast<std::size_t>(day_index - 1)] != 0;
}

std::map<int, std::string> Calendar::event_labels() const {
  std::map<int, std::string> out;
  for (const auto& d : days)
    if (!d.event_name.empty()) out[d.day_index] = d.event_name;
  return out;
}

Calendar Calendar::extended_to(int n_days) const {
  Calendar out = *this;
  if (days.empty()) throw LengthError(kModule, "cannot extend an empty calendar");
  auto serial = parse_date(days.back().date);
  if (!serial) throw ValueError(kModule, "unparseable date '" + days.back().date + "'");
  while (out.size() < n_days) {
    const CalendarDay& prev = out.days.back();
    CalendarDay d;
    ++*serial;
    int y, m, dd;
    split_date(*serial, y, m, dd);
    d.date = format_date(y, m, dd);
    d.day_index = prev.day_index + 1;
    d.weekday = prev.weekday % 7 + 1;
    d.month = m;
    d.year = y;
    d.week_id = prev.week_id < 0 ? -1 : prev.week_id + (d.weekday == out.days.front().weekday ? 1 : 0);
    out.days.push_back(std::move(d));
  }
  for (auto& [state, flags] : out.snap) flags.resize(static_cast<std::size_t>(out.size()), 0);
  return out;
}

std::optional<double> PriceTable::price(const std::string& store, const std::string& item,
                                        int week_id) const {
  auto it = by_store_item.find({store, item});
  if (it == by_store_item.end()) return std::nullopt;
  auto wit = it->second.find(week_id);
  if (wit == it->second.end()) return std::nullopt;
  return wit->second;
}

int SalesPanel::find_series(const std::string& id) const {
  for (int i = 0; i < num_series(); ++i)
    if (series[static_cast<std::size_t>(i)].id == id) return i;
  return -1;
}

std::vector<double> SalesPanel::day_prices(int row) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out(static_cast<std::size_t>(num_days()), nan);
  if (prices.empty() || calendar.size() == 0) return out;
  const SeriesInfo& info = series[static_cast<std::size_t>(row)];
  for (int t = 1; t <= num_days() && t <= calendar.size(); ++t) {
    int wk = calendar.days[static_cast<std::size_t>(t - 1)].week_id;
    if (wk < 0) continue;
    if (auto p = prices.price(info.store_id, info.item_id, wk)) out[static_cast<std::size_t>(t - 1)] = *p;
  }
  return out;
}

SalesPanel parse_wide_sales(const std::string& path) {
  csv::Reader reader(path, kModule);
  const int c_id = reader.require("id");
  const int c_item = reader.require("item_id");
  const int c_dept = reader.require("dept_id");
  const int c_cat = reader.require("cat_id");
  const int c_store = reader.require("store_id");
  const int c_state = reader.require("state_id");

  // Day columns are taken in file order; names are not sorted.
  std::vector<int> day_cols;
  for (std::size_t i = 0; i < reader.header().size(); ++i)
    if (reader.header()[i].rfind("d_", 0) == 0) day_cols.push_back(static_cast<int>(i));
  if (day_cols.empty()) throw SchemaError(kModule, path + ": no d_* day columns");

  SalesPanel panel;
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::string> row;
  while (reader.next(row)) {
    SeriesInfo info;
    info.id = row[static_cast<std::size_t>(c_id)];
    info.item_id = row[static_cast<std::size_t>(c_item)];
    info.dept_id = row[static_cast<std::size_t>(c_dept)];
    info.cat_id = row[static_cast<std::size_t>(c_cat)];
    info.store_id = row[static_cast<std::size_t>(c_store)];
    info.state_id = row[static_cast<std::size_t>(c_state)];
    if (!seen.insert({info.item_id, info.store_id}).second)
      throw DuplicateKeyError(kModule, path + ":" + std::to_string(reader.line_number()) +
                                           ": duplicate (item, store) = (" + info.item_id + ", " +
                                           info.store_id + ")");
    std::vector<double> vals;
    vals.reserve(day_cols.size());
    for (int c : day_cols) {
      const std::string& cell = row[static_cast<std::size_t>(c)];
      auto v = parse_int(cell);
      if (!v || *v < 0)
        throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) + ": column '" +
                                      reader.header()[static_cast<std::size_t>(c)] +
                                      "': bad sales value '" + cell + "'");
      vals.push_back(static_cast<double>(*v));
    }
    panel.series.push_back(std::move(info));
    panel.values.push_back(std::move(vals));
  }
  if (panel.series.empty()) throw SchemaError(kModule, path + ": no data rows");
  return panel;
}

Calendar parse_calendar(const std::string& path) {
  csv::Reader reader(path, kModule);
  const int c_date = reader.require("date");
  const int c_d = reader.require("d");
  const int c_weekday = reader.column("weekday");
  const int c_wday = reader.column("wday");
  if (c_weekday < 0 && c_wday < 0) throw SchemaError(kModule, path + ": missing column 'weekday'");
  const int c_month = reader.column("month");
  const int c_year = reader.column("year");
  const int c_week = reader.column("wm_yr_wk");
  const int c_ev1 = reader.column("event_name_1");
  const int c_ev2 = reader.column("event_name_2");
  std::vector<std::pair<std::string, int>> snap_cols;  // state id, column
  for (std::size_t i = 0; i < reader.header().size(); ++i)
    if (reader.header()[i].rfind("snap_", 0) == 0)
      snap_cols.emplace_back(reader.header()[i].substr(5), static_cast<int>(i));

  Calendar cal;
  std::vector<std::string> row;
  long long prev_serial = 0;
  while (reader.next(row)) {
    CalendarDay day;
    day.date = row[static_cast<std::size_t>(c_date)];
    auto serial = parse_date(day.date);
    if (!serial)
      throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) +
                                    ": unparseable date '" + day.date + "'");
    if (!cal.days.empty()) {
      if (*serial == prev_serial)
        throw ContinuityError(kModule, path + ": duplicate date " + day.date);
      if (*serial != prev_serial + 1)
        throw ContinuityError(kModule, path + ": gap in dates before " + day.date);
    }
    prev_serial = *serial;

    const std::string& dcell = row[static_cast<std::size_t>(c_d)];
    std::string dnum = dcell.rfind("d_", 0) == 0 ? dcell.substr(2) : dcell;
    auto didx = parse_int(dnum);
    if (!didx)
      throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) +
                                    ": bad day id '" + dcell + "'");
    day.day_index = static_cast<int>(*didx);
    if (day.day_index != static_cast<int>(cal.days.size()) + 1)
      throw ContinuityError(kModule, path + ": day index " + dcell + " does not match row order");

    int wd = -1;
    if (c_wday >= 0) {
      auto v = parse_int(row[static_cast<std::size_t>(c_wday)]);
      if (v && *v >= 1 && *v <= 7) wd = static_cast<int>(*v);
    }
    if (wd < 0 && c_weekday >= 0) wd = weekday_from_name(row[static_cast<std::size_t>(c_weekday)]);
    if (wd < 0)
      throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) +
                                    ": unrecognized weekday");
    day.weekday = wd;
    if (!cal.days.empty() && day.weekday != cal.days.back().weekday % 7 + 1)
      throw ContinuityError(kModule, path + ": weekday does not advance by one at " + day.date);

    int y, m, dd;
    split_date(*serial, y, m, dd);
    day.month = m;
    day.year = y;
    if (c_month >= 0)
      if (auto v = parse_int(row[static_cast<std::size_t>(c_month)])) day.month = static_cast<int>(*v);
    if (c_year >= 0)
      if (auto v = parse_int(row[static_cast<std::size_t>(c_year)])) day.year = static_cast<int>(*v);
    if (c_week >= 0)
      if (auto v = parse_int(row[static_cast<std::size_t>(c_week)])) day.week_id = static_cast<int>(*v);
    if (c_ev1 >= 0 && !row[static_cast<std::size_t>(c_ev1)].empty())
      day.event_name = row[static_cast<std::size_t>(c_ev1)];
    else if (c_ev2 >= 0 && !row[static_cast<std::size_t>(c_ev2)].empty())
      day.event_name = row[static_cast<std::size_t>(c_ev2)];

    for (auto& [state, col] : snap_cols) {
      auto& flags = cal.snap[state];
      flags.resize(cal.days.size() + 1, 0);
      const std::string& cell = row[static_cast<std::size_t>(col)];
      flags.back() = (cell == "1" || lower(cell) == "true") ? 1 : 0;
    }
    cal.days.push_back(std::move(day));
  }
  if (cal.days.empty()) throw SchemaError(kModule, path + ": no data rows");
  return cal;
}

PriceTable parse_prices(const std::string& path) {
  csv::Reader reader(path, kModule);
  const int c_store = reader.require("store_id");
  const int c_item = reader.require("item_id");
  const int c_week = reader.require("wm_yr_wk");
  const int c_price = reader.require("sell_price");
  PriceTable table;
  std::vector<std::string> row;
  while (reader.next(row)) {
    auto wk = parse_int(row[static_cast<std::size_t>(c_week)]);
    auto price = parse_real(row[static_cast<std::size_t>(c_price)]);
    if (!wk || !price || *price <= 0)
      throw ValueError(kModule, path + ":" + std::to_string(reader.line_number()) +
                                    ": bad price row");
    table.by_store_item[{row[static_cast<std::size_t>(c_store)],
                         row[static_cast<std::size_t>(c_item)]}][static_cast<int>(*wk)] = *price;
  }
  return table;
}

void attach(SalesPanel& panel, Calendar calendar, PriceTable prices) {
  if (calendar.size() < panel.num_days())
    throw ContinuityError(kModule, "calendar covers " + std::to_string(calendar.size()) +
                                       " days but the panel has " +
                                       std::to_string(panel.num_days()));
  panel.calendar = std::move(calendar);
  panel.prices = std::move(prices);
}

Hierarchy aggregate_rows(const std::vector<SeriesInfo>& series,
                         const std::vector<std::vector<double>>& rows) {
  Hierarchy h;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (int lv = 0; lv < kNumLevels; ++lv) {
      SeriesKey key = SeriesKey::project(series[i], static_cast<Level>(lv));
      auto [it, inserted] = h.series.try_emplace(std::move(key));
      if (inserted) {
        it->second.assign(rows[i].size(), 0.0);
        ++h.level_counts[static_cast<std::size_t>(lv)];
      }
      auto& acc = it->second;
      for (std::size_t t = 0; t < rows[i].size(); ++t) acc[t] += rows[i][t];
    }
  }
  return h;
}

Hierarchy build_hierarchy(const SalesPanel& panel) {
  return aggregate_rows(panel.series, panel.values);
}

void write_wide_sales(const SalesPanel& panel, const std::string& path) {
  csv::Writer w(path, kModule);
  std::vector<std::string> header = {"id", "item_id", "dept_id", "cat_id", "store_id", "state_id"};
  for (int t = 1; t <= panel.num_days(); ++t) header.push_back("d_" + std::to_string(t));
  w.row(header);
  for (int i = 0; i < panel.num_series(); ++i) {
    const SeriesInfo& info = panel.series[static_cast<std::size_t>(i)];
    std::vector<std::string> row = {info.id,      info.item_id,  info.dept_id,
                                    info.cat_id,  info.store_id, info.state_id};
    for (double v : panel.values[static_cast<std::size_t>(i)]) row.push_back(fmt_double(v));
    w.row(row);
  }
}

void write_calendar(const Calendar& calendar, const std::string& path) {
  csv::Writer w(path, kModule);
  std::vector<std::string> header = {"date", "wm_yr_wk", "weekday", "wday",
                                     "month", "year",    "d",       "event_name_1",
                                     "event_type_1"};
  std::vector<std::string> snap_states;
  for (const auto& [state, flags] : calendar.snap) {
    header.push_back("snap_" + state);
    snap_states.push_back(state);
  }
  w.row(header);
  static const char* kNames[] = {"Saturday", "Sunday",   "Monday", "Tuesday",
                                 "Wednesday", "Thursday", "Friday"};
  for (const auto& d : calendar.days) {
    std::vector<std::string> row = {
        d.date,
        std::to_string(d.week_id),
        kNames[(d.weekday - 1) % 7],
        std::to_string(d.weekday),
        std::to_string(d.month),
        std::to_string(d.year),
        "d_" + std::to_string(d.day_index),
        d.event_name,
        d.event_name.empty() ? "" : "Synthetic",
    };
    for (const auto& state : snap_states)
      row.push_back(calendar.snap_flag(state, d.day_index) ? "1" : "0");
    w.row(row);
  }
}

void write_prices(const PriceTable& prices, const std::string& path) {
  csv::Writer w(path, kModule);
  w.row({"store_id", "item_id", "wm_yr_wk", "sell_price"});
  for (const auto& [key, weeks] : prices.by_store_item)
    for (const auto& [wk, price] : weeks)
      w.row({key.first, key.second, std::to_string(wk), fmt_double(price)});
}

}  // namespace hiercast
