#pragma once

// Shared fixtures: scratch directories, tiny calendars and panels, file and
// subprocess helpers. Numeric reference code lives in oracles.hpp.

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hiercast/ingest.hpp"
#include "hiercast/util.hpp"

namespace testutil {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("hiercast_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Calendar starting 2011-01-29 (a Saturday), weekday 1..7 from that day.
inline hiercast::Calendar make_calendar(int days) {
  hiercast::Calendar cal;
  const long long start = hiercast::days_from_civil(2011, 1, 29);
  for (int i = 0; i < days; ++i) {
    hiercast::CalendarDay day;
    int y = 0, m = 0, d = 0;
    hiercast::civil_from_days(start + i, y, m, d);
    day.date = hiercast::format_date(y, m, d);
    day.day_index = i + 1;
    day.weekday = i % 7 + 1;
    day.month = m;
    day.year = y;
    day.week_id = 11101 + i / 7;
    cal.days.push_back(day);
  }
  return cal;
}

inline hiercast::SeriesInfo info(const std::string& item, const std::string& dept,
                                 const std::string& cat, const std::string& store,
                                 const std::string& state) {
  hiercast::SeriesInfo s;
  s.item_id = item;
  s.dept_id = dept;
  s.cat_id = cat;
  s.store_id = store;
  s.state_id = state;
  s.id = item + "_" + store;
  return s;
}

// Panel over the given value rows; series i becomes ITEM<i> in a single
// store/department so tests that only care about values stay short.
inline hiercast::SalesPanel make_panel(const std::vector<std::vector<double>>& rows) {
  hiercast::SalesPanel panel;
  for (std::size_t i = 0; i < rows.size(); ++i)
    panel.series.push_back(info("ITEM" + std::to_string(i), "D1", "C1", "S1", "ST1"));
  panel.values = rows;
  if (!rows.empty()) panel.calendar = make_calendar(static_cast<int>(rows[0].size()));
  return panel;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command capturing stdout; stderr is left on the test log.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace testutil
