#pragma once

#include <string>
#include <vector>

#include "slitworks/app/scenario.hpp"

namespace slitworks::app {

std::vector<std::string> presetNames();
/// Shipped YAML text; throws UsageError for unknown names.
const std::string& presetYaml(const std::string& name);
Scenario loadPreset(const std::string& name, const Limits& limits = {});

}  // namespace slitworks::app
