#include "slitworks/detector/freefall.hpp"

#include <cmath>
#include <string>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {

using constants::g;

double fallHeight(double v, double L) {
  if (!(v > 0)) throw DomainError("velocity must be positive");
  return g * L * L / (2 * v * v);
}

double heightToVelocity(double H, double L) {
  if (!(H > 0)) throw DomainError("fall height must be positive");
  return L * std::sqrt(g / (2 * H));
}

double coriolisShift(double v, double latitude, double L) {
  if (!(v > 0)) throw DomainError("velocity must be positive");
  return constants::omegaE * std::sin(latitude) * L * L / v;
}

double coriolisAcceleration(double v, double latitude) { return 2 * v * constants::omegaE * std::sin(latitude); }

double diffractionOrderParabola(int n, double mass, double d, double X) {
  if (n == 0) throw DomainError("the zeroth order has no parabola");
  const double nn = static_cast<double>(n) * n;
  return -g * mass * mass * d * d * X * X / (2 * nn * constants::h * constants::h);
}

double classicalShadowWidth(double s1, double s2, double L1, double L2) {
  if (!(L1 > 0) || !(L2 > 0)) throw DomainError("L1 and L2 must be positive");
  return (s1 + s2) * (L1 + L2) / L1;
}

namespace {

struct SelectorGeometry {
  double base;  // chord height at the selector
  double K;     // g zs (L - zs) / 2, sag of the parabola is K / v^2
};

SelectorGeometry geometry(const Beamline& b, const VelocitySelector& s, double yDetector) {
  const double L = b.totalLength(), zs = s.distanceFromSource;
  if (!(zs > 0 && zs < L)) throw DomainError("selector must sit between source and detector");
  if (s.opening < 0) throw DomainError("selector opening must be non-negative");
  return {b.sourceHeight + (yDetector - b.sourceHeight) * zs / L, g * zs * (L - zs) / 2};
}

}  // namespace

VelocityBand velocityBandAtHeight(const Beamline& beamline, const VelocitySelector& selector, double yDetector) {
  const auto [base, K] = geometry(beamline, selector, yDetector);
  const double upper = selector.height + selector.opening / 2 - base;
  const double lower = selector.height - selector.opening / 2 - base;
  if (upper <= 0) return VelocityBand::none();
  VelocityBand band;
  band.vMin = std::sqrt(K / upper);
  band.vMax = lower > 0 ? std::sqrt(K / lower) : INFINITY;
  return band;
}

VelocityBand velocityBandForBin(const Beamline& beamline, const VelocitySelector& selector, double yLo, double yHi) {
  const VelocityBand low = velocityBandAtHeight(beamline, selector, yLo);
  if (low.empty()) return VelocityBand::none();
  const VelocityBand high = velocityBandAtHeight(beamline, selector, yHi);
  return {low.vMin, high.empty() ? INFINITY : high.vMax};
}

double selectorCentreVelocity(const Beamline& beamline, const VelocitySelector& selector, double yDetector) {
  const auto [base, K] = geometry(beamline, selector, yDetector);
  const double sag = selector.height - base;
  return sag > 0 ? std::sqrt(K / sag) : NAN;
}

}  // namespace slitworks
