#include "slitworks/core/distributions.hpp"

#include <cmath>
#include <limits>

#include "slitworks/core/constants.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

using constants::pi;

const double kSqrtPi = std::sqrt(pi);
// exp(-x^2) underflows past this; also keeps x^n * 0 from turning into NaN
constexpr double kTailCut = 40.0;

}  // namespace

VelocityDistribution VelocityDistribution::maxwellBoltzmann(double T, double mass) {
  VelocityDistribution d;
  d.kind = VelocityKind::MaxwellBoltzmann;
  d.temperature = T;
  d.mass = mass;
  d.validate();
  return d;
}

VelocityDistribution VelocityDistribution::fluxWeighted(double T, double mass) {
  auto d = maxwellBoltzmann(T, mass);
  d.kind = VelocityKind::FluxWeighted;
  return d;
}

VelocityDistribution VelocityDistribution::uniformBand(double vMin, double vMax) {
  VelocityDistribution d;
  d.kind = VelocityKind::UniformBand;
  d.vMin = vMin;
  d.vMax = vMax;
  d.validate();
  return d;
}

VelocityDistribution VelocityDistribution::delta(double v0) {
  VelocityDistribution d;
  d.kind = VelocityKind::Delta;
  d.v0 = v0;
  d.validate();
  return d;
}

void VelocityDistribution::validate() const {
  switch (kind) {
    case VelocityKind::MaxwellBoltzmann:
    case VelocityKind::FluxWeighted:
      if (!(temperature > 0) || !(mass > 0)) throw DomainError("thermal distribution needs T > 0 and mass > 0");
      return;
    case VelocityKind::UniformBand:
      if (!(vMin > 0) || !(vMax > vMin)) throw DomainError("uniform band needs 0 < vMin < vMax");
      return;
    case VelocityKind::Delta:
      if (!(v0 > 0)) throw DomainError("delta distribution needs v0 > 0");
      return;
  }
  throw UsageError("unknown velocity distribution kind");
}

double VelocityDistribution::vMp() const { return thermalStats(temperature, mass).vMp; }

double velocityPdf(const VelocityDistribution& dist, double v) {
  if (v < 0) throw DomainError("velocity must be non-negative");
  switch (dist.kind) {
    case VelocityKind::MaxwellBoltzmann: {
      const double a = dist.vMp(), x = v / a;
      if (x > kTailCut) return 0.0;
      return 4.0 / (a * kSqrtPi) * x * x * std::exp(-x * x);
    }
    case VelocityKind::FluxWeighted: {
      const double a = dist.vMp(), x = v / a;
      if (x > kTailCut) return 0.0;
      return 2.0 / a * x * x * x * std::exp(-x * x);
    }
    case VelocityKind::UniformBand:
      return (v >= dist.vMin && v < dist.vMax) ? 1.0 / (dist.vMax - dist.vMin) : 0.0;
    case VelocityKind::Delta:
      return 0.0;
  }
  throw UsageError("unknown velocity distribution kind");
}

double velocityCdf(const VelocityDistribution& dist, double v) {
  if (v <= 0) return 0.0;
  if (std::isinf(v)) return 1.0;
  switch (dist.kind) {
    case VelocityKind::MaxwellBoltzmann: {
      const double x = v / dist.vMp();
      return std::erf(x) - 2.0 / kSqrtPi * x * std::exp(-x * x);
    }
    case VelocityKind::FluxWeighted: {
      const double x = v / dist.vMp();
      // 1 - (1+x^2) e^{-x^2}, written to keep precision at small x
      const double x2 = x * x;
      return -std::expm1(-x2) - x2 * std::exp(-x2);
    }
    case VelocityKind::UniformBand:
      if (v <= dist.vMin) return 0.0;
      if (v >= dist.vMax) return 1.0;
      return (v - dist.vMin) / (dist.vMax - dist.vMin);
    case VelocityKind::Delta:
      return v >= dist.v0 ? 1.0 : 0.0;
  }
  throw UsageError("unknown velocity distribution kind");
}

double probabilityInBand(const VelocityDistribution& dist, double a, double b) {
  if (!(b > a)) return 0.0;
  return velocityCdf(dist, b) - velocityCdf(dist, a);
}

std::pair<double, double> effectiveSupport(const VelocityDistribution& dist) {
  switch (dist.kind) {
    case VelocityKind::MaxwellBoltzmann:
    case VelocityKind::FluxWeighted:
      return {0.0, 6.0 * dist.vMp()};
    case VelocityKind::UniformBand:
      return {dist.vMin, dist.vMax};
    case VelocityKind::Delta:
      return {dist.v0, dist.v0};
  }
  throw UsageError("unknown velocity distribution kind");
}

double meanSpeed(const VelocityDistribution& dist) {
  switch (dist.kind) {
    case VelocityKind::MaxwellBoltzmann:
      return 2.0 / kSqrtPi * dist.vMp();
    case VelocityKind::FluxWeighted:
      return 3.0 * kSqrtPi / 4.0 * dist.vMp();
    case VelocityKind::UniformBand:
      return 0.5 * (dist.vMin + dist.vMax);
    case VelocityKind::Delta:
      return dist.v0;
  }
  throw UsageError("unknown velocity distribution kind");
}

double wavelengthPdf(double T, double mass, double lambda) {
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  const double l0 = deBroglieWavelength(mass, thermalStats(T, mass).vMp);
  // flux-weighted speed density transformed with v = h/(m lambda)
  const double r = l0 / lambda;
  if (r > kTailCut) return 0.0;
  const double r2 = r * r;
  return 2.0 / l0 * r2 * r2 * r * std::exp(-r2);
}

double wavelengthPdfPeak(double T, double mass) {
  return std::sqrt(2.0 / 5.0) * deBroglieWavelength(mass, thermalStats(T, mass).vMp);
}

}  // namespace slitworks
