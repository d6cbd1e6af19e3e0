#pragma once

#include <vector>

#include "slitworks/engine/mask.hpp"

namespace slitworks {

/// Multi-slit far-field intensity (sin b / b)^2 (sin N a / sin a)^2, normalized to 1 at theta = 0.
/// Rotated masks use the effective period and window.
std::vector<double> fraunhoferIntensity(const Mask& mask, double lambda, const std::vector<double>& angles);

/// Same, evaluated at detector positions x with sin(theta) = x / L2.
std::vector<double> fraunhoferAtDetector(const Mask& mask, double lambda, double L2, const std::vector<double>& x);

}  // namespace slitworks
