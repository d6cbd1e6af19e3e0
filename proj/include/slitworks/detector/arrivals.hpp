#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slitworks/detector/image.hpp"

namespace slitworks {

struct ArrivalEvent {
  double x;
  double y;
  double v;
  std::uint64_t id;
};

/// Inverse-transform sampling of single-molecule arrivals from the image density. Pixel choice and
/// in-pixel position come from one mt19937_64 stream seeded with `seed`.
std::vector<ArrivalEvent> sampleArrivals(const DetectorImage& image, std::size_t count, std::uint64_t seed);

/// Accumulates dots with a Gaussian point spread of the given FWHM onto the image grid.
std::vector<double> renderDots(const std::vector<ArrivalEvent>& events, const DetectorImage& layout, double psfFwhm);

}  // namespace slitworks
