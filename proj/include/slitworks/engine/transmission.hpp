#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "slitworks/engine/mask.hpp"

namespace slitworks {

struct GridPolicy {
  int minSamplesPerSlit = 64;
  int padFactor = 4;
};

/// Piecewise-constant mask transmission on a uniform power-of-two grid. Cell j covers
/// [x(j) - dx/2, x(j) + dx/2]. All slits share one sampled profile `slitProfile`, placed at
/// cell offsets `slitStart`, which keeps far-field evaluation cheap for wide gratings.
struct TransmissionFunction {
  double dx = 0;
  double x0 = 0;                    ///< centre of cell 0
  std::size_t size = 0;             ///< total cell count, power of two
  std::vector<std::complex<double>> slitProfile;
  std::vector<std::size_t> slitStart;
  double periodUsed = 0;            ///< slit spacing actually realised on the grid

  double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
  std::complex<double> at(std::size_t j) const;
  std::vector<std::complex<double>> samples() const;
  /// Sum |t|^2 dx
  double transmittedProbability() const;
  /// Width of the nonzero support of one slit.
  double openSupport() const;
};

/// Builds t(xi) = exp(i phi(xi)) inside each open window and 0 elsewhere. The cell size is the
/// largest value <= gridStep that fits the window an integer number of times and keeps the slit
/// spacing as close to an integer number of cells as possible.
TransmissionFunction buildTransmission(const Mask& mask, const VdwParams& vdw, double v, double gridStep,
                                       const GridPolicy& policy = {});

}  // namespace slitworks
