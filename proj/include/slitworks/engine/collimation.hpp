#pragma once

#include <vector>

namespace slitworks {

/// Geometric shadow of an aperture of width w lit by a source of width s1: the convolution of
/// rect(s1 L2 / L1) and rect(w (L1 + L2) / L1), a unit-area trapezoid.
struct CollimationKernel {
  double a = 0;  ///< source image width [m]
  double b = 0;  ///< aperture shadow width [m]

  static CollimationKernel fromGeometry(double s1, double apertureWidth, double L1, double L2);
  double value(double x) const;
  /// Integral of the kernel over (-inf, x].
  double cumulative(double x) const;
  double fullWidth() const { return a + b; }
  double fwhm() const;
  /// Cell-integrated weights on spacing dx, odd length, sums to 1.
  std::vector<double> discretize(double dx) const;
};

/// Linear convolution with a centred odd-length kernel, output the size of `signal`.
std::vector<double> convolveSame(const std::vector<double>& signal, const std::vector<double>& kernel);

/// Hard spectral cut: zero every spatial frequency above `cutoff` [1/m].
std::vector<double> lowPass(const std::vector<double>& signal, double dx, double cutoff);

}  // namespace slitworks
