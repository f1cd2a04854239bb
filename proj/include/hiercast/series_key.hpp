#pragma once

#include <array>
#include <compare>
#include <string>

namespace hiercast {

// The twelve aggregation levels, from fully aggregated down to item x store.
// The order here fixes the order of level counts and report breakdowns.
enum class Level : int {
  Total = 0,
  State,
  Store,
  Category,
  Department,
  StateCategory,
  StateDepartment,
  StoreCategory,
  StoreDepartment,
  Item,
  ItemState,
  ItemStore,
};

inline constexpr int kNumLevels = 12;

const char* level_name(Level level);

// Full identity of one bottom row as carried by the sales file.
struct SeriesInfo {
  std::string id;
  std::string item_id;
  std::string dept_id;
  std::string cat_id;
  std::string store_id;
  std::string state_id;
};

// Identity of a series at one aggregation level. Exactly the fields dictated
// by the level are populated; the rest stay empty.
struct SeriesKey {
  Level level = Level::ItemStore;
  std::string item_id;
  std::string dept_id;
  std::string cat_id;
  std::string store_id;
  std::string state_id;

  // Projects a bottom row onto `level`, keeping only that level's fields.
  static SeriesKey project(const SeriesInfo& info, Level level);

  // Joined populated fields, "TOTAL" at the top level.
  std::string id() const;

  bool operator==(const SeriesKey&) const = default;
  auto operator<=>(const SeriesKey&) const = default;
};

}  // namespace hiercast
