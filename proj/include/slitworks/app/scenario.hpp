#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "slitworks/app/schema.hpp"
#include "slitworks/core/distributions.hpp"
#include "slitworks/core/types.hpp"
#include "slitworks/detector/freefall.hpp"
#include "slitworks/detector/image.hpp"
#include "slitworks/engine/mask.hpp"

namespace slitworks::app {

struct ScenarioOptions {
  bool collimation = true;
  bool coriolis = false;
  double subBandThreshold = 0.02;
  double gridStep = 0;         ///< 0 = automatic
  double smoothingPeriod = 0;  ///< low-pass period for the trace, 0 = off
  std::optional<double> traceVMin, traceVMax;
  long long arrivals = 0;
  double psfWidth = 400e-9;
  double peakThreshold = 0.02;
};

struct CarpetSettings {
  double zMax = 0;
  int zSteps = 200;
  int gridExponent = 14;
  std::optional<double> wavelength;  ///< wins over speed
  std::optional<double> speed;
  double cropHalfWidth = 0;
};

struct Scenario {
  std::string name = "scenario";
  std::string description;
  std::uint64_t seed = 1;
  Molecule molecule = Molecule::pcH2();
  Mask mask;
  VdwParams vdw;
  Beamline beamline;
  VelocitySelector selector;
  bool selectorDistanceSet = false;  ///< false: the selector sits at the grating
  VelocityDistribution velocity;
  DetectorGrid detector;
  HeightMapping heightMapping = HeightMapping::SelectorParabola;
  ScenarioOptions options;
  std::optional<CarpetSettings> carpet;

  /// Selector with its distance resolved against the beamline.
  VelocitySelector resolvedSelector() const;
  /// Speed at which single-wavelength operations (carpet, summaries) are evaluated.
  double referenceSpeed() const;
};

Scenario scenarioFromJson(const Json& raw, const Limits& limits = {}, const LineMap* lines = nullptr);
Scenario scenarioFromYaml(const std::string& text, const Limits& limits = {});
Scenario loadScenarioFile(const std::string& path, const Limits& limits = {});

/// Normalized SI document; feeding it back through scenarioFromJson gives an equal scenario.
Json scenarioToJson(const Scenario& s);
/// Same content as YAML, numbers printed with 17 significant digits.
std::string scenarioToYaml(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace slitworks::app
