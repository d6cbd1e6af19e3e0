#include "slitworks/engine/fraunhofer.hpp"

#include <cmath>

#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

using constants::pi;

constexpr double kSeriesBelow = 1e-6;

double sincSquared(double b) {
  if (std::abs(b) < kSeriesBelow) {
    const double s = 1 - b * b / 6;
    return s * s;
  }
  const double s = std::sin(b) / b;
  return s * s;
}

// (sin N a / sin a)^2 / N^2, with the limit N^2 at a = m pi.
double gratingFactor(int N, double a) {
  if (N == 1) return 1.0;
  const double m = std::round(a / pi);
  const double e = a - m * pi;
  if (std::abs(e) < kSeriesBelow) {
    const double r = 1 - (static_cast<double>(N) * N - 1) * e * e / 6;
    return r * r;
  }
  const double r = std::sin(N * a) / (N * std::sin(a));
  return r * r;
}

}  // namespace

std::vector<double> fraunhoferIntensity(const Mask& mask, double lambda, const std::vector<double>& angles) {
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  const EffectiveGeometry eg = effectiveGeometry(mask);
  std::vector<double> out(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double st = std::sin(angles[i]);
    const double a = pi * eg.dEff / lambda * st;
    const double b = pi * eg.sEffGeo / lambda * st;
    out[i] = sincSquared(b) * gratingFactor(mask.slitCount, a);
  }
  return out;
}

std::vector<double> fraunhoferAtDetector(const Mask& mask, double lambda, double L2, const std::vector<double>& x) {
  if (!(L2 > 0)) throw DomainError("L2 must be positive");
  std::vector<double> angles(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = x[i] / L2;
    if (std::abs(s) > 1) throw DomainError("detector position beyond 90 degrees");
    angles[i] = std::asin(s);
  }
  return fraunhoferIntensity(mask, lambda, angles);
}

}  // namespace slitworks
