#include "slitworks/detector/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

// 53 random bits to [0, 1); std::uniform_real_distribution is not specified bit-for-bit across libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<ArrivalEvent> sampleArrivals(const DetectorImage& image, std::size_t count, std::uint64_t seed) {
  std::vector<ArrivalEvent> out;
  if (count == 0) return out;
  const std::size_t nx = image.cols(), ny = image.rows();
  if (nx < 2 || ny < 1) throw UsageError("image too small to sample");
  std::vector<double> cdf(image.intensity.size());
  double total = 0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    const double v = image.intensity[i];
    if (v < 0 || !std::isfinite(v)) throw DomainError("image density must be finite and non-negative");
    total += v;
    cdf[i] = total;
  }
  if (!(total > 0)) throw DomainError("cannot sample arrivals from an all-zero image");
  const double dx = image.xGrid[1] - image.xGrid[0];
  const double dy = ny > 1 ? image.yGrid[0] - image.yGrid[1] : 0.0;

  std::mt19937_64 rng(seed);
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double u = unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const std::size_t k = static_cast<std::size_t>(it - cdf.begin());
    const std::size_t r = k / nx, c = k % nx;
    ArrivalEvent e;
    e.x = image.xGrid[c] + (unit(rng) - 0.5) * dx;
    e.y = image.yGrid[r] + (unit(rng) - 0.5) * dy;
    e.v = image.heightVelocityMap[r];
    e.id = (seed << 32) ^ n;
    out.push_back(e);
  }
  return out;
}

std::vector<double> renderDots(const std::vector<ArrivalEvent>& events, const DetectorImage& layout, double psfFwhm) {
  const std::size_t nx = layout.cols(), ny = layout.rows();
  std::vector<double> img(nx * ny, 0.0);
  if (nx < 2 || ny < 1) return img;
  if (!(psfFwhm > 0)) throw UsageError("point spread width must be positive");
  const double sigma = psfFwhm / (2 * std::sqrt(2 * std::log(2.0)));
  const double dx = layout.xGrid[1] - layout.xGrid[0];
  const double dy = ny > 1 ? layout.yGrid[0] - layout.yGrid[1] : dx;
  const double x0 = layout.xGrid[0] - dx / 2, yTop = layout.yGrid[0] + dy / 2;
  // mass of a unit Gaussian in a pixel, separable
  auto cellMass = [&](double centre, double lo, double width) {
    const double s = sigma * std::sqrt(2.0);
    return 0.5 * (std::erf((lo + width - centre) / s) - std::erf((lo - centre) / s));
  };
  const long reachX = static_cast<long>(std::ceil(4 * sigma / dx)) + 1;
  const long reachY = static_cast<long>(std::ceil(4 * sigma / dy)) + 1;
  for (const auto& e : events) {
    const long cx = static_cast<long>(std::floor((e.x - x0) / dx));
    const long cy = static_cast<long>(std::floor((yTop - e.y) / dy));
    for (long r = cy - reachY; r <= cy + reachY; ++r) {
      if (r < 0 || r >= static_cast<long>(ny)) continue;
      const double my = cellMass(e.y, yTop - (r + 1) * dy, dy);
      if (my <= 0) continue;
      for (long c = cx - reachX; c <= cx + reachX; ++c) {
        if (c < 0 || c >= static_cast<long>(nx)) continue;
        img[static_cast<std::size_t>(r) * nx + static_cast<std::size_t>(c)] += my * cellMass(e.x, x0 + c * dx, dx);
      }
    }
  }
  return img;
}

}  // namespace slitworks
