#pragma once

#include <optional>
#include <vector>

#include "slitworks/core/distributions.hpp"
#include "slitworks/engine/collimation.hpp"
#include "slitworks/engine/mask.hpp"

namespace slitworks {

struct Peak {
  double position;
  double intensity;
};

struct FitOptions {
  int maxIterations = 200;
  double relativeStep = 1e-10;
};

struct EnvelopeFit {
  double amplitude;
  double center;
  double sigma;
  double fwhm;
  double residual;  ///< rms of fit residuals relative to the largest peak
  int iterations;
};

/// Least-squares Gaussian A exp(-(x-c)^2 / 2 sigma^2) through the peaks, Levenberg-Marquardt from
/// weighted-moment start values.
EnvelopeFit fitEnvelope(const std::vector<Peak>& peaks, const FitOptions& options = {});

/// Inverse of the single-slit width relation: s = 0.89 lambda L2 / fwhm.
double fwhmToEffectiveSlit(double fwhm, double lambda, double L2);

/// One peak per diffraction order: integrated intensity in [c + n sp - sp/2, c + n sp + sp/2] at
/// the intensity centroid. Orders below `threshold` of the strongest are dropped.
std::vector<Peak> extractOrderPeaks(const std::vector<double>& x, const std::vector<double>& intensity,
                                    double spacing, double center = 0, double threshold = 0.02);

/// Full width at half maximum of the central lobe, linear interpolation between samples.
double traceFwhm(const std::vector<double>& x, const std::vector<double>& intensity);

struct EnvelopeConfig {
  Mask mask;
  VdwParams vdw;
  double mass = 0;
  double vMin = 0;
  double vMax = 0;
  int vSamples = 5;  ///< equally weighted speeds across [vMin, vMax]; 1 uses the midpoint
  double L2 = 0;
  double gridStep = 0.05e-9;
  double detectorStep = 0.05e-6;
  double detectorHalfWidth = 0;  ///< 0 picks 3 s-envelope widths
  std::optional<CollimationKernel> kernel;
  double peakThreshold = 0.02;
  unsigned threads = 0;
};

struct EnvelopeAnalysis {
  std::vector<double> x;
  std::vector<double> trace;  ///< band-summed probability density per metre
  std::vector<Peak> peaks;
  std::optional<EnvelopeFit> fit;
  double lambda = 0;   ///< at the band midpoint speed
  double dEff = 0;
  double fwhm = 0;     ///< Gaussian envelope FWHM for gratings, central-lobe FWHM for N = 1
  double sEff = 0;
};

/// Band-summed far-field trace, order extraction, Gaussian envelope and effective slit width.
EnvelopeAnalysis analyzeEnvelope(const EnvelopeConfig& config);

/// Smallest C3 in [c3Lo, c3Hi] for which analyzeEnvelope gives sEff = target (bisection, sEff
/// is non-increasing in C3).
double calibrateC3(EnvelopeConfig config, double targetSEff, double c3Lo, double c3Hi, double tolerance = 1e-3);

}  // namespace slitworks
