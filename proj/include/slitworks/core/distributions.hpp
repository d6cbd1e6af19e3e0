#pragma once

#include <utility>

namespace slitworks {

enum class VelocityKind { MaxwellBoltzmann, FluxWeighted, UniformBand, Delta };

struct VelocityDistribution {
  VelocityKind kind = VelocityKind::Delta;
  double temperature = 0;  ///< K, thermal kinds
  double mass = 0;         ///< kg, thermal kinds
  double vMin = 0;         ///< m/s, uniform band
  double vMax = 0;
  double v0 = 0;           ///< m/s, delta

  static VelocityDistribution maxwellBoltzmann(double T, double mass);
  static VelocityDistribution fluxWeighted(double T, double mass);
  static VelocityDistribution uniformBand(double vMin, double vMax);
  static VelocityDistribution delta(double v0);

  void validate() const;
  double vMp() const;
};

/// Normalized speed density [s/m]. The delta kind has no density and returns 0; use probabilityInBand.
double velocityPdf(const VelocityDistribution& dist, double v);

/// Closed-form cumulative distribution.
double velocityCdf(const VelocityDistribution& dist, double v);

/// P(a <= v < b).
double probabilityInBand(const VelocityDistribution& dist, double a, double b);

/// Interval holding all but ~1e-12 of the probability.
std::pair<double, double> effectiveSupport(const VelocityDistribution& dist);

double meanSpeed(const VelocityDistribution& dist);

/// Flux-weighted wavelength density [1/m]: 2 l0^4 / l^5 exp(-l0^2/l^2) with l0 = h/(m v_mp).
double wavelengthPdf(double T, double mass, double lambda);

/// Location of the wavelengthPdf maximum, sqrt(2/5) l0.
double wavelengthPdfPeak(double T, double mass);

}  // namespace slitworks
