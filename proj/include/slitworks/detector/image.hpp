#pragma once

#include <functional>
#include <vector>

#include "slitworks/core/distributions.hpp"
#include "slitworks/core/types.hpp"
#include "slitworks/detector/freefall.hpp"
#include "slitworks/engine/mask.hpp"

namespace slitworks {

enum class HeightMapping {
  SelectorParabola,  ///< full flight parabola through source, selector opening and detector
  PostGratingFall,   ///< horizontal passage at the selector height, free fall over L2 only
};

struct DetectorGrid {
  double xMin = 0, xMax = 0;
  int nx = 0;
  double yMin = 0, yMax = 0;
  int ny = 0;

  void validate() const;
  double dx() const { return (xMax - xMin) / nx; }
  double dy() const { return (yMax - yMin) / ny; }
  /// pixel centres, x ascending
  std::vector<double> xs() const;
  /// pixel centres, top row (highest y) first
  std::vector<double> ys() const;
};

struct RenderOptions {
  bool collimation = true;
  bool coriolis = false;
  double subBandThreshold = 0.02;  ///< relative band width above which a row averages several speeds
  double gridStep = 0;             ///< transmission cell size, 0 picks automatically
  HeightMapping heightMapping = HeightMapping::SelectorParabola;
  int maxPixelSubsamples = 32;      ///< cap on far-field samples averaged into one pixel
  VelocitySelector selector;
  unsigned threads = 0;
  std::function<void(double)> progress;  ///< fraction of rows done, called from worker threads
};

struct DetectorImage {
  std::vector<double> xGrid;
  std::vector<double> yGrid;
  std::vector<double> intensity;  ///< row-major, yGrid.size() rows
  std::vector<double> heightVelocityMap;
  std::vector<double> bandMin, bandMax, rowWeight;

  std::size_t rows() const { return yGrid.size(); }
  std::size_t cols() const { return xGrid.size(); }
  double at(std::size_t r, std::size_t c) const { return intensity[r * xGrid.size() + c]; }
};

/// Gravity-dispersed detector image. Each row holds the far-field pattern at the row speed, convolved
/// with the collimation kernel, shifted by the Coriolis drift and scaled so that it integrates over x
/// to the probability of the row's velocity band.
DetectorImage renderImage(const Beamline& beamline, double mass, const Mask& mask, const VdwParams& vdw,
                          const VelocityDistribution& dist, const DetectorGrid& grid, const RenderOptions& options);

struct Trace {
  std::vector<double> x;
  std::vector<double> intensity;
  int rows = 0;
};

/// Sum of rows whose speed lies in [vMin, vMax], optionally low-passed at `smoothingCutoff` [1/m].
Trace extractTrace(const DetectorImage& image, double vMin, double vMax, double smoothingCutoff = 0);

}  // namespace slitworks
