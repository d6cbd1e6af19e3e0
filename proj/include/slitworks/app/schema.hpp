#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slitworks/core/units.hpp"

namespace slitworks::app {

using Json = nlohmann::json;

enum class FieldKind { Number, Integer, Boolean, String, Enum };

struct FieldSpec {
  std::string path;  ///< dotted, e.g. "mask.slit_width"
  FieldKind kind;
  units::Dimension dim = units::Dimension::Dimensionless;
  bool required = false;
  std::optional<double> min;  ///< SI
  std::optional<double> max;
  bool exclusiveMin = false;
  Json defaultValue;  ///< null: no default, the key stays absent
  std::vector<std::string> choices;
  std::string description;
};

/// Guards against requests that would tie up the host.
struct Limits {
  long long maxPixels = 4'000'000;
  int maxGridExponent = 20;
  int maxZSteps = 4096;
  long long maxArrivals = 10'000'000;
  int maxSlits = 10'000;
};

/// Source line of each dotted path in the original document (1-based), when known.
using LineMap = std::map<std::string, int>;

const std::vector<FieldSpec>& scenarioFields();

/// Sections that may be omitted entirely.
bool optionalSection(const std::string& section);

/// Checks types and bounds, converts unit strings to SI and fills defaults. Throws ScenarioError
/// naming the offending path (and line when `lines` knows it).
Json normalizeScenario(const Json& raw, const LineMap* lines = nullptr, const Limits& limits = {});

/// JSON Schema (draft 2020-12) for the scenario document; numbers may be given as strings with units.
Json scenarioJsonSchema();

}  // namespace slitworks::app
