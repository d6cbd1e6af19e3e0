#include "slitworks/engine/mask.hpp"

#include <cmath>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {

void Mask::validate() const {
  if (slitCount < 1) throw DomainError("mask needs at least one slit");
  if (!(slitWidth > 0)) throw DomainError("slit width must be positive");
  if (slitCount > 1 && !(period > 0)) throw DomainError("period must be positive");
  if (period > 0 && slitWidth > period) throw DomainError("slit width exceeds period");
  if (thickness < 0) throw DomainError("thickness must be non-negative");
  if (!(std::abs(rotation) < constants::pi / 2)) throw DomainError("rotation must satisfy |theta| < pi/2");
  if (totalWidth && !(*totalWidth > 0)) throw DomainError("total width must be positive");
}

double Mask::width() const {
  if (totalWidth) return *totalWidth;
  return slitCount > 1 ? slitCount * period : slitWidth;
}

EffectiveGeometry effectiveGeometry(const Mask& mask) {
  mask.validate();
  const double c = std::cos(mask.rotation), s = std::abs(std::sin(mask.rotation));
  const double open = mask.slitWidth * c - mask.thickness * s;
  if (!(open > 0)) throw OpaqueAtAngleError("slit is closed at this rotation: s cos(theta) <= T sin(theta)");
  return {mask.period * c, open};
}

void VdwParams::validate(const Mask& mask) const {
  if (c3 < 0) throw DomainError("C3 must be non-negative");
  if (cutoffDistance < 0) throw DomainError("cutoff distance must be non-negative");
  if (!enabled) return;
  const double open = effectiveGeometry(mask).sEffGeo;
  if (!(cutoffDistance < open / 2))
    throw OpaqueAtAngleError("cutoff band closes the projected slit (cutoff >= open width / 2)");
}

namespace {

// Path integral of dist^-3 through one wall of a slab tilted by theta, for a straight path whose lab
// transverse distance from the projected window edge is y. The distance to the face grows linearly with
// depth, from y/cos(theta) at the entrance to y/cos(theta) + T tan(theta) at the exit. Written without
// the 1/sin(theta) of the raw integral so that theta = 0 reduces to T/y^3.
double wallIntegral(double y, double T, double theta) {
  const double c = std::cos(theta);
  const double a = y / c;
  const double b = T * std::tan(theta);
  return T * (2 * a + b) / (2 * c * a * a * (a + b) * (a + b));
}

}  // namespace

std::optional<double> vdwPhase(double x, const Mask& mask, const VdwParams& vdw, double v) {
  if (!(v > 0)) throw DomainError("velocity must be positive");
  const double open = effectiveGeometry(mask).sEffGeo;
  const double y1 = open / 2 + x, y2 = open / 2 - x;
  if (y1 <= 0 || y2 <= 0) return std::nullopt;
  if (!vdw.enabled) return 0.0;
  if (y1 < vdw.cutoffDistance || y2 < vdw.cutoffDistance) return std::nullopt;
  if (vdw.c3 == 0) return 0.0;
  const double T = mask.thickness;
  if (vdw.model == PhaseModel::AsPrinted) {
    // -(T C3 / (h v)) [1/(s/2 - x^3) - 1/(s/2 + x^3)], raw SI numbers, as typeset
    const double x3 = x * x * x;
    return -(T * vdw.c3 / (constants::h * v)) * (1.0 / (open / 2 - x3) - 1.0 / (open / 2 + x3));
  }
  const double theta = std::abs(mask.rotation);
  return vdw.c3 / (constants::hbar * v) * (wallIntegral(y1, T, theta) + wallIntegral(y2, T, theta));
}

}  // namespace slitworks
