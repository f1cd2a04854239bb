#include <doctest.h>

#include <string>
#include <vector>

#include "hiercast/errors.hpp"
#include "hiercast/ingest.hpp"
#include "hiercast/rng.hpp"
#include "hiercast/util.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace hiercast;

namespace {

std::string sales_header(int days) {
  std::string h = "id,item_id,dept_id,cat_id,store_id,state_id";
  for (int d = 1; d <= days; ++d) h += ",d_" + std::to_string(d);
  return h + "\n";
}

std::string sales_row(const std::string& item, const std::string& store,
                      const std::vector<int>& values) {
  std::string row = item + "_" + store + "," + item + ",D1,C1," + store + ",ST1";
  for (int v : values) row += "," + std::to_string(v);
  return row + "\n";
}

std::string calendar_text(int days) {
  std::string text = "date,wm_yr_wk,weekday,wday,month,year,d,snap_ST1\n";
  const Calendar cal = testutil::make_calendar(days);
  const char* names[] = {"Saturday", "Sunday",   "Monday", "Tuesday",
                         "Wednesday", "Thursday", "Friday"};
  for (const CalendarDay& day : cal.days)
    text += day.date + "," + std::to_string(day.week_id) + "," + names[day.weekday - 1] + "," +
            std::to_string(day.weekday) + "," + std::to_string(day.month) + "," +
            std::to_string(day.year) + ",d_" + std::to_string(day.day_index) + ",0\n";
  return text;
}

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("parse_wide_sales echoes a 2-row file") {
  testutil::TempDir dir("sales");
  testutil::write_text(dir.file("s.csv"),
                       sales_header(3) + sales_row("A", "S1", {1, 2, 3}) +
                           sales_row("B", "S1", {0, 5, 0}));
  const SalesPanel panel = parse_wide_sales(dir.file("s.csv"));
  CHECK(panel.num_series() == 2);
  CHECK(panel.num_days() == 3);
  CHECK(panel.values[0] == std::vector<double>{1, 2, 3});
  CHECK(panel.values[1] == std::vector<double>{0, 5, 0});
  CHECK(panel.series[0].id == "A_S1");
  CHECK(panel.series[1].item_id == "B");
}

TEST_CASE("parse_wide_sales rejects bad files") {
  testutil::TempDir dir("sales_bad");
  testutil::write_text(dir.file("no_store.csv"),
                       "id,item_id,dept_id,cat_id,state_id,d_1\nA_S1,A,D1,C1,ST1,1\n");
  CHECK_THROWS_WITH_AS(parse_wide_sales(dir.file("no_store.csv")),
                       doctest::Contains("store_id"), SchemaError);

  testutil::write_text(dir.file("neg.csv"), sales_header(2) + sales_row("A", "S1", {1, -2}));
  CHECK_THROWS_WITH_AS(parse_wide_sales(dir.file("neg.csv")), doctest::Contains("d_2"),
                       ValueError);

  testutil::write_text(dir.file("nan.csv"),
                       sales_header(1) + "A_S1,A,D1,C1,S1,ST1,x\n");
  CHECK_THROWS_AS(parse_wide_sales(dir.file("nan.csv")), ValueError);

  testutil::write_text(dir.file("dup.csv"), sales_header(1) + sales_row("A", "S1", {1}) +
                                                sales_row("A", "S1", {2}));
  CHECK_THROWS_AS(parse_wide_sales(dir.file("dup.csv")), DuplicateKeyError);
}

TEST_CASE("column sums survive parsing on a 10x2 panel") {
  testutil::TempDir dir("sales_sum");
  const int days = 5;
  Rng rng(3);
  std::string text = sales_header(days);
  std::vector<long long> sums(days, 0);
  for (int item = 0; item < 10; ++item)
    for (int store = 0; store < 2; ++store) {
      std::vector<int> vals;
      for (int d = 0; d < days; ++d) {
        vals.push_back(static_cast<int>(rng.next_below(9)));
        sums[d] += vals.back();
      }
      text += sales_row("I" + std::to_string(item), "S" + std::to_string(store), vals);
    }
  testutil::write_text(dir.file("s.csv"), text);
  const SalesPanel panel = parse_wide_sales(dir.file("s.csv"));
  REQUIRE(panel.num_series() == 20);
  for (int d = 0; d < days; ++d) {
    double acc = 0.0;
    for (const auto& row : panel.values) acc += row[d];
    CHECK(acc == static_cast<double>(sums[d]));
  }
}

TEST_CASE("parse_calendar basics and weekday cycle") {
  testutil::TempDir dir("cal");
  testutil::write_text(dir.file("c.csv"), calendar_text(28));
  const Calendar cal = parse_calendar(dir.file("c.csv"));
  REQUIRE(cal.size() == 28);
  for (int i = 0; i < 28; ++i) {
    CHECK(cal.days[i].day_index == i + 1);
    int y = 0, m = 0, d = 0;
    split_date(*parse_date(cal.days[i].date), y, m, d);
    CHECK(cal.days[i].weekday == oracle::zeller_weekday(y, m, d));
  }
  CHECK(cal.snap.count("ST1") == 1);
}

TEST_CASE("parse_calendar rejects gaps and bad indices") {
  testutil::TempDir dir("cal_bad");
  std::string text = calendar_text(3);
  // drop the middle data line to create a date gap
  const auto lines = split(text, '\n');
  testutil::write_text(dir.file("gap.csv"),
                       lines[0] + "\n" + lines[1] + "\n" + lines[3] + "\n");
  CHECK_THROWS_AS(parse_calendar(dir.file("gap.csv")), ContinuityError);

  std::string swapped = lines[0] + "\n" + lines[1] + "\n";
  std::string l2 = lines[2];
  const auto pos = l2.find(",d_2,");
  REQUIRE(pos != std::string::npos);
  swapped += l2.replace(pos, 5, ",d_9,") + "\n";
  testutil::write_text(dir.file("idx.csv"), swapped);
  CHECK_THROWS_AS(parse_calendar(dir.file("idx.csv")), ContinuityError);
}

TEST_CASE("attach requires calendar coverage") {
  testutil::TempDir dir("attach");
  testutil::write_text(dir.file("s.csv"), sales_header(5) + sales_row("A", "S1", {1, 2, 3, 4, 5}));
  SalesPanel panel = parse_wide_sales(dir.file("s.csv"));
  CHECK_THROWS_AS(attach(panel, testutil::make_calendar(3)), ContinuityError);
  attach(panel, testutil::make_calendar(5));
  CHECK(panel.calendar.size() == 5);
}

TEST_CASE("single-series hierarchy collapses to 12 copies") {
  const SalesPanel panel = testutil::make_panel({{3, 1, 4, 1, 5}});
  const Hierarchy h = build_hierarchy(panel);
  CHECK(h.series.size() == 12);
  for (int level = 0; level < kNumLevels; ++level) CHECK(h.level_counts[level] == 1);
  for (const auto& [key, vec] : h.series) CHECK(vec == std::vector<double>{3, 1, 4, 1, 5});
}

TEST_CASE("hierarchy parents equal the sum of their children") {
  // 3 items x 2 stores, 2 states, 2 categories
  SalesPanel panel;
  Rng rng(11);
  const char* depts[] = {"D1", "D1", "D2"};
  const char* cats[] = {"C1", "C1", "C2"};
  const char* states[] = {"ST1", "ST2"};
  for (int item = 0; item < 3; ++item)
    for (int store = 0; store < 2; ++store) {
      panel.series.push_back(testutil::info("I" + std::to_string(item), depts[item], cats[item],
                                            "S" + std::to_string(store), states[store]));
      std::vector<double> vals;
      for (int d = 0; d < 6; ++d) vals.push_back(static_cast<double>(rng.next_below(10)));
      panel.values.push_back(vals);
    }
  panel.calendar = testutil::make_calendar(6);

  const Hierarchy h = build_hierarchy(panel);
  // every series at every level equals the brute-force sum of the bottom rows
  // matching its populated ids
  for (const auto& [key, vec] : h.series) {
    std::vector<double> expect(6, 0.0);
    for (int r = 0; r < panel.num_series(); ++r) {
      const SeriesInfo& s = panel.series[r];
      if (!key.item_id.empty() && key.item_id != s.item_id) continue;
      if (!key.dept_id.empty() && key.dept_id != s.dept_id) continue;
      if (!key.cat_id.empty() && key.cat_id != s.cat_id) continue;
      if (!key.store_id.empty() && key.store_id != s.store_id) continue;
      if (!key.state_id.empty() && key.state_id != s.state_id) continue;
      for (int d = 0; d < 6; ++d) expect[d] += panel.values[r][d];
    }
    CHECK(vec == expect);
  }
  CHECK(h.level_counts[0] == 1);   // total
  CHECK(h.level_counts[1] == 2);   // states
  CHECK(h.level_counts[2] == 2);   // stores
  CHECK(h.level_counts[3] == 2);   // categories
  CHECK(h.level_counts[4] == 2);   // departments
  CHECK(h.level_counts[9] == 3);   // items
  CHECK(h.level_counts[11] == 6);  // item x store
}

TEST_CASE("serialize and re-parse reproduces the panel") {
  testutil::TempDir dir("round");
  SalesPanel panel = testutil::make_panel({{1, 0, 2, 3}, {4, 4, 0, 1}});
  PriceTable prices;
  prices.by_store_item[{"S1", "ITEM0"}][11101] = 2.5;
  prices.by_store_item[{"S1", "ITEM1"}][11101] = 1.25;
  panel.prices = prices;

  write_wide_sales(panel, dir.file("s.csv"));
  write_calendar(panel.calendar, dir.file("c.csv"));
  write_prices(panel.prices, dir.file("p.csv"));

  SalesPanel back = parse_wide_sales(dir.file("s.csv"));
  attach(back, parse_calendar(dir.file("c.csv")), parse_prices(dir.file("p.csv")));
  CHECK(back.values == panel.values);
  REQUIRE(back.num_series() == panel.num_series());
  for (int i = 0; i < panel.num_series(); ++i) CHECK(back.series[i].id == panel.series[i].id);
  REQUIRE(back.calendar.size() == panel.calendar.size());
  for (int i = 0; i < panel.calendar.size(); ++i) {
    CHECK(back.calendar.days[i].date == panel.calendar.days[i].date);
    CHECK(back.calendar.days[i].weekday == panel.calendar.days[i].weekday);
    CHECK(back.calendar.days[i].week_id == panel.calendar.days[i].week_id);
  }
  CHECK(back.prices.by_store_item == panel.prices.by_store_item);

  // second round trip is byte-identical
  write_wide_sales(back, dir.file("s2.csv"));
  CHECK(testutil::read_text(dir.file("s2.csv")) == testutil::read_text(dir.file("s.csv")));
}

TEST_CASE("day_prices resolves week ids and gaps") {
  SalesPanel panel = testutil::make_panel({{1, 1, 1, 1, 1, 1, 1, 1}});
  PriceTable prices;
  prices.by_store_item[{"S1", "ITEM0"}][11101] = 3.0;  // first week only
  panel.prices = prices;
  const std::vector<double> p = panel.day_prices(0);
  REQUIRE(p.size() == 8);
  for (int d = 0; d < 7; ++d) CHECK(p[d] == 3.0);
  CHECK(std::isnan(p[7]));  // second week has no price
}

TEST_CASE("calendar extension continues dates and weekdays") {
  Calendar cal = testutil::make_calendar(10);
  cal.days[3].event_name = "EV";
  const Calendar ext = cal.extended_to(17);
  REQUIRE(ext.size() == 17);
  for (int i = 0; i < 17; ++i) {
    CHECK(ext.days[i].weekday == i % 7 + 1);
    CHECK(ext.days[i].day_index == i + 1);
  }
  CHECK(ext.days[3].event_name == "EV");
  CHECK(ext.days[16].event_name.empty());
  const long long last = *parse_date(ext.days[16].date);
  CHECK(last == *parse_date(cal.days[0].date) + 16);
  const auto labels = cal.event_labels();
  REQUIRE(labels.size() == 1);
  CHECK(labels.at(4) == "EV");
}

TEST_SUITE_END();
