#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "slitworks/engine/transmission.hpp"

namespace slitworks {

struct WaveField {
  double dx = 0;
  double x0 = 0;
  double wavelength = 0;
  double z = 0;
  std::vector<std::complex<double>> psi;

  static WaveField fromTransmission(const TransmissionFunction& t, double lambda);
  double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
  /// sum |psi|^2 dx
  double norm() const;
  std::vector<double> intensity() const;
};

/// Smallest power-of-two sample count for which the Fresnel transfer function exp(-i pi lambda dz f^2)
/// is Nyquist sampled on spacing dx.
std::size_t requiredFresnelSamples(double dx, double lambda, double dz);

/// Paraxial propagation by dz with the exact Fresnel transfer function on the periodic FFT grid.
/// Throws AliasingError when the grid is too small for dz.
WaveField fresnelPropagate(const WaveField& field, double dz);

}  // namespace slitworks
