#include "slitworks/core/formulas.hpp"

#include <cmath>
#include <string>

#include "slitworks/core/constants.hpp"
#include "slitworks/core/types.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

using namespace constants;

void requirePositive(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite");
}

// Single-slit FWHM prefactor of the sinc^2 pattern, rounded as in the source material.
constexpr double kSlitFwhm = 0.89;

}  // namespace

double deBroglieWavelength(double mass, double v) {
  requirePositive(mass, "mass");
  requirePositive(v, "velocity");
  return h / (mass * v);
}

double speedForWavelength(double mass, double lambda) {
  requirePositive(mass, "mass");
  requirePositive(lambda, "wavelength");
  return h / (mass * lambda);
}

double heisenbergMomentumFwhm(double slitWidth) {
  requirePositive(slitWidth, "slit width");
  return kSlitFwhm * h / slitWidth;
}

double diffractionAngleFwhm(double lambda, double slitWidth) {
  requirePositive(lambda, "wavelength");
  requirePositive(slitWidth, "slit width");
  return kSlitFwhm * lambda / slitWidth;
}

double widthAtDetector(double lambda, double L2, double slitWidth) {
  requirePositive(L2, "L2");
  return diffractionAngleFwhm(lambda, slitWidth) * L2;
}

double transverseCoherenceWidth(double L1, double lambda, double sourceWidth,
                                CoherenceConvention convention) {
  requirePositive(L1, "L1");
  requirePositive(lambda, "wavelength");
  requirePositive(sourceWidth, "source width");
  const double k = convention == CoherenceConvention::FirstZeros ? 2.0 : kSlitFwhm;
  return k * L1 * lambda / sourceWidth;
}

double sourceWidthForCoherence(double L1, double lambda, double xT, CoherenceConvention convention) {
  requirePositive(xT, "coherence width");
  // X_T is reciprocal in s, so s = X_T(s=1 m) / X_T
  return transverseCoherenceWidth(L1, lambda, 1.0, convention) / xT;
}

double longitudinalCoherenceLength(double lambda, double v, double spread,
                                   LongitudinalConvention convention) {
  requirePositive(lambda, "wavelength");
  requirePositive(v, "velocity");
  requirePositive(spread, "velocity spread");
  const double x = lambda * v / spread;
  return convention == LongitudinalConvention::Fwhm ? x : x / (2.0 * pi);
}

ThermalStats thermalStats(double T, double mass) {
  requirePositive(T, "temperature");
  requirePositive(mass, "mass");
  const double kT = kB * T;
  ThermalStats s{};
  s.vMp = std::sqrt(2.0 * kT / mass);
  s.vMean = std::sqrt(8.0 * kT / (pi * mass));
  s.vRms = std::sqrt(3.0 * kT / mass);
  s.fwhm = 0.993 * s.vMp;
  return s;
}

double fluxWeightedPeakSpeed(double T, double mass) {
  requirePositive(T, "temperature");
  requirePositive(mass, "mass");
  return std::sqrt(3.0 * kB * T / mass);
}

double sourceAngularFlux(double p0Pa, double areaM2, double massU, double T) {
  requirePositive(p0Pa, "pressure");
  requirePositive(areaM2, "area");
  requirePositive(massU, "mass");
  requirePositive(T, "temperature");
  const double pHpa = p0Pa / 100.0;
  const double aCm2 = areaM2 * 1e4;
  return 8.4e21 * pHpa * aCm2 / std::sqrt(massU * T);
}

double vaporPressure(double T, double A, double B) {
  requirePositive(T, "temperature");
  return std::pow(10.0, A - B / T) * 1e5;
}

double farFieldDistance(double w, double lambda, FarFieldConvention convention) {
  requirePositive(w, "width");
  requirePositive(lambda, "wavelength");
  const double x = w * w / lambda;
  return convention == FarFieldConvention::MainText ? x : pi / 4.0 * x;
}

double talbotLength(double d, double lambda) {
  requirePositive(d, "period");
  requirePositive(lambda, "wavelength");
  return d * d / lambda;
}

double collimatedFraction(double apertureArea, double distance, double transmissivity) {
  requirePositive(apertureArea, "aperture area");
  requirePositive(distance, "distance");
  if (!(transmissivity >= 0 && transmissivity <= 1)) throw DomainError("transmissivity must be in [0,1]");
  return transmissivity * apertureArea / (2.0 * pi * distance * distance);
}

Molecule Molecule::fromAtomicMass(std::string name, double massU) {
  Molecule m;
  m.name = std::move(name);
  m.mass = massU * u;
  m.validate();
  return m;
}

Molecule Molecule::pcH2() { return fromAtomicMass("PcH2", 514.54); }

void Molecule::validate() const {
  if (!(mass > 0)) throw DomainError("molecule mass must be positive");
  if (c3 && *c3 < 0) throw DomainError("C3 must be non-negative");
  if (momentInertiaB && !(*momentInertiaB > 0)) throw DomainError("moment of inertia must be positive");
  if (vibModeCount && *vibModeCount < 0) throw DomainError("vibrational mode count must be non-negative");
}

void Beamline::validate() const {
  if (!(L1 > 0) || !(L2 > 0)) throw DomainError("L1 and L2 must be positive");
  if (s1 < 0 || (s2 && *s2 < 0)) throw DomainError("slit widths must be non-negative");
}

}  // namespace slitworks
