#pragma once

#include <string>
#include <vector>

#include "slitworks/app/scenario.hpp"

namespace slitworks::app {

struct OutputFile {
  std::string name;   ///< file name relative to the output directory
  std::string bytes;
};

std::string sha256Hex(const std::string& bytes);

/// SHA-256 over the canonical scenario JSON and the constants version string.
std::string scenarioDigest(const Scenario& s);

/// Deterministic run record: inputs digest, constants, software version, per-output hashes.
Json runManifest(const std::string& command, const Scenario& s, const std::vector<OutputFile>& outputs);

}  // namespace slitworks::app
