#pragma once

#include <string>
#include <vector>

namespace logse::harness {

struct PresetInfo {
  std::string name;
  std::string description;
};

/// example1, example2-theta{1..5}, example3-case{i..viii}, example4-case{ix..xi}.
std::vector<PresetInfo> list_presets();

/// INI text of a preset. The default is the desk-scale variant; full_scale
/// selects the full-size grids and horizons. Throws ConfigError for unknown names.
std::string preset_config(const std::string& name, bool full_scale = false);

}  // namespace logse::harness
