#include "hiercast/series_key.hpp"

namespace hiercast {

const char* level_name(Level level) {
  switch (level) {
    case Level::Total: return "total";
    case Level::State: return "state";
    case Level::Store: return "store";
    case Level::Category: return "category";
    case Level::Department: return "department";
    case Level::StateCategory: return "state_category";
    case Level::StateDepartment: return "state_department";
    case Level::StoreCategory: return "store_category";
    case Level::StoreDepartment: return "store_department";
    case Level::Item: return "item";
    case Level::ItemState: return "item_state";
    case Level::ItemStore: return "item_store";
  }
  return "?";
}

SeriesKey SeriesKey::project(const SeriesInfo& info, Level level) {
  SeriesKey k;
  k.level = level;
  switch (level) {
    case Level::Total: break;
    case Level::State: k.state_id = info.state_id; break;
    case Level::Store: k.store_id = info.store_id; break;
    case Level::Category: k.cat_id = info.cat_id; break;
    case Level::Department: k.dept_id = info.dept_id; break;
    case Level::StateCategory:
      k.state_id = info.state_id;
      k.cat_id = info.cat_id;
      break;
    case Level::StateDepartment:
      k.state_id = info.state_id;
      k.dept_id = info.dept_id;
      break;
    case Level::StoreCategory:
      k.store_id = info.store_id;
      k.cat_id = info.cat_id;
      break;
    case Level::StoreDepartment:
      k.store_id = info.store_id;
      k.dept_id = info.dept_id;
      break;
    case Level::Item: k.item_id = info.item_id; break;
    case Level::ItemState:
      k.item_id = info.item_id;
      k.state_id = info.state_id;
      break;
    case Level::ItemStore:
      k.item_id = info.item_id;
      k.store_id = info.store_id;
      break;
  }
  return k;
}

std::string SeriesKey::id() const {
  std::string out;
  auto add = [&out](const std::string& part) {
    if (part.empty()) return;
    if (!out.empty()) out.push_back('_');
    out += part;
  };
  add(state_id);
  add(store_id);
  add(cat_id);
  add(dept_id);
  add(item_id);
  if (out.empty()) out = "TOTAL";
  return out;
}

}  // namespace hiercast
