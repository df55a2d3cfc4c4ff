#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twotier/model.hpp"

namespace twotier {

/// Names of the bundled scenario presets.
std::vector<std::string> preset_names();

/// Bundled config text. Throws ValidationError for an unknown name.
std::string preset_text(std::string_view name);

ScenarioConfig load_preset(std::string_view name);

}  // namespace twotier
