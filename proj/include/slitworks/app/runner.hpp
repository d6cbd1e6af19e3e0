#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slitworks/app/export.hpp"
#include "slitworks/app/manifest.hpp"
#include "slitworks/app/scenario.hpp"
#include "slitworks/detector/arrivals.hpp"
#include "slitworks/detector/image.hpp"
#include "slitworks/engine/carpet.hpp"

namespace slitworks::app {

struct RunControl {
  unsigned threads = 0;
  std::function<void(double)> progress;
};

struct SimulationResult {
  DetectorImage image;
  Trace trace;  ///< rows in the trace band, or all rows without one
  std::vector<ArrivalEvent> arrivals;
  Json summary;
};

struct CarpetResult {
  TalbotCarpet carpet;
  Json summary;
};

/// The one compute path behind the CLI and the service.
SimulationResult runSimulation(const Scenario& s, const RunControl& control = {});
CarpetResult runCarpet(const Scenario& s, const RunControl& control = {});

/// Files written by `simulate`: image, trace, velocity map, arrivals (when sampled), summary.
std::vector<OutputFile> simulationOutputs(const Scenario& s, const SimulationResult& r, ImageFormat format);
std::vector<OutputFile> carpetOutputs(const Scenario& s, const CarpetResult& r, ImageFormat format);

/// Service payloads. Large grids go out as base64 doubles unless `arrays` is set.
Json simulationResponse(const Scenario& s, const SimulationResult& r, bool arrays);
Json carpetResponse(const Scenario& s, const CarpetResult& r, bool arrays);

}  // namespace slitworks::app
