#pragma once

#include <cstddef>
#include <vector>

#include "slitworks/engine/mask.hpp"

namespace slitworks {

struct CarpetOptions {
  int gridExponent = 14;
  int minSamplesPerSlit = 8;
  int maxSamplesPerSlit = 64;
  /// Half width of the stored x window; 0 stores mask width / 2 + 2 periods.
  double cropHalfWidth = 0;
  unsigned threads = 0;
};

struct TalbotCarpet {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> intensity;  ///< row-major, z.size() rows of x.size()
  double dx = 0;
  double period = 0;          ///< realised grating period
  double talbotLength = 0;
  std::size_t samplesPerSlit = 0;

  const double* row(std::size_t i) const { return intensity.data() + i * x.size(); }
};

/// |psi(x, z)|^2 behind the binary mask for zSteps evenly spaced z in [0, zMax]; a single step is the row at zMax.
/// The grid spacing is chosen as fine as the Fresnel Nyquist condition at zMax allows.
TalbotCarpet talbotCarpet(const Mask& mask, double lambda, double zMax, int zSteps, const CarpetOptions& options = {});

/// Pearson correlation of two rows restricted to |x| <= halfWindow, maximized over lateral shifts
/// within one period. Self-images at odd multiples of d^2/lambda are displaced by d/2.
double revivalCorrelation(const TalbotCarpet& carpet, const std::vector<double>& a, const std::vector<double>& b,
                          double halfWindow);

/// Position of the first order after rescaling for near-field curvature: L2 lambda / d (1 + N L_T / (6 L2)).
double rescaledOrderPosition(double L2, double lambda, double d, int slitCount);

}  // namespace slitworks
