#pragma once

#include <algorithm>
#include <memory>
#include <optional>

#include "cotwin/catalog.hpp"
#include "cotwin/errors.hpp"

namespace fixtures {

using namespace cotwin;

inline BuildingPtr thin(const char* type) { return gen_thin(CoxeterMatrix::of_type(type), std::string("thin_") + type); }

inline std::vector<Building::PanelList> panel_lists(const Building& b) {
  std::vector<Building::PanelList> out(b.rank());
  for (int s = 0; s < b.rank(); ++s) {
    for (std::uint32_t i = 0; i < b.panel_count(s); ++i) out[s].push_back(b.panel_members(s, i));
  }
  return out;
}

/// Move chamber c out of its s-panel into the s-panel with index `target`.
/// Returns the mutated building, or nothing when construction rejects it.
inline std::shared_ptr<const Building> moved(const Building& b, Chamber c, int s, std::uint32_t target) {
  auto lists = panel_lists(b);
  auto& from = lists[s][b.panel_index(c, s)];
  from.erase(std::find(from.begin(), from.end(), c));
  lists[s][target].push_back(c);
  try {
    return std::make_shared<const Building>(b.name() + "_mutated", b.weyl_ptr(), b.size(), std::move(lists));
  } catch (const Error&) {
    return nullptr;
  }
}

}  // namespace fixtures
