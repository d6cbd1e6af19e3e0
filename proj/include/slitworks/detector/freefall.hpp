#pragma once

#include <limits>

#include "slitworks/core/types.hpp"

namespace slitworks {

/// g L^2 / (2 v^2)
double fallHeight(double v, double L);

/// L sqrt(g / (2 H)), inverse of fallHeight.
double heightToVelocity(double H, double L);

/// Omega_E sin(latitude) L^2 / v, the sideways drift over a flight of length L.
double coriolisShift(double v, double latitude, double L);

/// 2 v Omega_E sin(latitude)
double coriolisAcceleration(double v, double latitude);

/// Height of diffraction order n at horizontal position X: -g m^2 d^2 X^2 / (2 n^2 h^2).
double diffractionOrderParabola(int n, double mass, double d, double X);

/// Classical full shadow width behind two slits: (s1 + s2)(L1 + L2) / L1.
double classicalShadowWidth(double s1, double s2, double L1, double L2);

struct VelocitySelector {
  double height = 0;              ///< centre of the opening [m]
  double opening = 0;             ///< vertical opening [m]
  double distanceFromSource = 0;  ///< [m]
};

struct VelocityBand {
  double vMin = 0;
  double vMax = 0;  ///< +inf when the band is open towards fast molecules
  bool empty() const { return !(vMax >= vMin) || vMax <= 0; }
  static VelocityBand none() { return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()}; }
};

/// Speeds whose parabola through the source point and the selector opening lands at yDetector.
VelocityBand velocityBandAtHeight(const Beamline& beamline, const VelocitySelector& selector, double yDetector);

/// Union of velocityBandAtHeight over the detector bin [yLo, yHi].
VelocityBand velocityBandForBin(const Beamline& beamline, const VelocitySelector& selector, double yLo, double yHi);

/// Speed of the parabola through the source and the centre of the selector that lands at yDetector;
/// NaN above the undeflected line.
double selectorCentreVelocity(const Beamline& beamline, const VelocitySelector& selector, double yDetector);

}  // namespace slitworks
