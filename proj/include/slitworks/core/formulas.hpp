#pragma once

namespace slitworks {

enum class CoherenceConvention { FirstZeros, Fwhm };
enum class LongitudinalConvention { Fwhm, GaussianSigma };
enum class FarFieldConvention { MainText, QuadraticPhase };

/// lambda = h/(m v)
double deBroglieWavelength(double mass, double v);

/// Inverse of deBroglieWavelength for speed.
double speedForWavelength(double mass, double lambda);

/// FWHM momentum spread behind a slit, 0.89 h/s.
double heisenbergMomentumFwhm(double slitWidth);

/// Angular FWHM of the single-slit diffraction cone, 0.89 lambda/s.
double diffractionAngleFwhm(double lambda, double slitWidth);

/// FWHM of the single-slit pattern at distance L2, 0.89 lambda L2 / s.
double widthAtDetector(double lambda, double L2, double slitWidth);

/// 2 L1 lambda / s (first zeros) or 0.89 L1 lambda / s (fwhm).
double transverseCoherenceWidth(double L1, double lambda, double sourceWidth,
                                CoherenceConvention convention);

/// Largest source width that still gives coherence width `xT`; inverse of transverseCoherenceWidth in s.
double sourceWidthForCoherence(double L1, double lambda, double xT, CoherenceConvention convention);

/// lambda v / dv (fwhm) or lambda v / (2 pi sigma_v).
double longitudinalCoherenceLength(double lambda, double v, double spread,
                                   LongitudinalConvention convention);

struct ThermalStats {
  double vMp;
  double vMean;
  double vRms;
  double fwhm;
};

ThermalStats thermalStats(double T, double mass);

/// Most probable speed of the flux-weighted distribution, sqrt(3 kT/m).
double fluxWeightedPeakSpeed(double T, double mass);

/// Forward angular flux of an effusive source [molecules/(sr s)].
/// The empirical prefactor expects p0 in hPa, A in cm^2, m in u and T in K; SI inputs are converted here.
double sourceAngularFlux(double p0Pa, double areaM2, double massU, double T);

/// Clausius-Clapeyron fit log10(P / 1e5 Pa) = A - B/T, returns Pa.
double vaporPressure(double T, double A, double B);

/// w^2/lambda (main text) or pi w^2 / (4 lambda) (quadratic phase of the Fresnel integral).
double farFieldDistance(double w, double lambda, FarFieldConvention convention);

/// d^2/lambda
double talbotLength(double d, double lambda);

/// Fraction of an isotropic 2 pi emitter passing an aperture of area A at distance L, times the grating transmissivity.
double collimatedFraction(double apertureArea, double distance, double transmissivity);

}  // namespace slitworks
