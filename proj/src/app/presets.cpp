#include "slitworks/app/presets.hpp"

#include <map>

#include "slitworks/errors.hpp"

namespace slitworks::app {

const std::map<std::string, std::string>& embeddedPresets();  // generated from scenarios/

std::vector<std::string> presetNames() {
  std::vector<std::string> out;
  for (const auto& [name, _] : embeddedPresets()) out.push_back(name);
  return out;
}

const std::string& presetYaml(const std::string& name) {
  const auto& all = embeddedPresets();
  const auto it = all.find(name);
  if (it == all.end()) throw UsageError("unknown preset '" + name + "'");
  return it->second;
}

Scenario loadPreset(const std::string& name, const Limits& limits) {
  return scenarioFromYaml(presetYaml(name), limits);
}

}  // namespace slitworks::app
