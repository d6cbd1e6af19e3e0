#include "slitworks/detector/image.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

#include "slitworks/core/formulas.hpp"
#include "slitworks/engine/collimation.hpp"
#include "slitworks/engine/farfield.hpp"
#include "slitworks/engine/parallel.hpp"
#include "slitworks/engine/transmission.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {

void DetectorGrid::validate() const {
  if (nx < 2 || ny < 1) throw UsageError("detector grid needs nx >= 2 and ny >= 1");
  if (!(xMax > xMin) || !(yMax > yMin)) throw UsageError("detector grid bounds must be increasing");
}

std::vector<double> DetectorGrid::xs() const {
  std::vector<double> v(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i) v[i] = xMin + (i + 0.5) * dx();
  return v;
}

std::vector<double> DetectorGrid::ys() const {
  std::vector<double> v(static_cast<std::size_t>(ny));
  for (int i = 0; i < ny; ++i) v[i] = yMax - (i + 0.5) * dy();
  return v;
}

namespace {

struct RowBand {
  double label;
  double vMin, vMax;
};

RowBand rowBand(const Beamline& b, const RenderOptions& o, double y, double dy) {
  const double yLo = y - dy / 2, yHi = y + dy / 2;
  if (o.heightMapping == HeightMapping::PostGratingFall) {
    const double ref = o.selector.height, open = o.selector.opening / 2;
    const double fallCentre = ref - y;
    if (!(fallCentre > 0)) throw DomainError("detector row above the undeflected beam (no free-fall speed)");
    const double label = heightToVelocity(fallCentre, b.L2);
    const double vMin = heightToVelocity(ref - (yLo - open), b.L2);
    const double topFall = ref - (yHi + open);
    const double vMax = topFall > 0 ? heightToVelocity(topFall, b.L2) : INFINITY;
    return {std::isfinite(vMax) ? 0.5 * (vMin + vMax) : label, vMin, vMax};
  }
  const double centre = selectorCentreVelocity(b, o.selector, y);
  if (!std::isfinite(centre)) throw DomainError("detector row above the undeflected beam (no free-fall speed)");
  const VelocityBand band = velocityBandForBin(b, o.selector, yLo, yHi);
  if (band.empty()) return {centre, 0, 0};
  return {std::isfinite(band.vMax) ? 0.5 * (band.vMin + band.vMax) : centre, band.vMin, band.vMax};
}

double autoGridStep(const Mask& mask, const VdwParams& vdw) {
  const double open = effectiveGeometry(mask).sEffGeo;
  const double step = open / 64;
  return vdw.enabled ? std::min(step, 0.05e-9) : step;
}

}  // namespace

DetectorImage renderImage(const Beamline& beamline, double mass, const Mask& mask, const VdwParams& vdw,
                          const VelocityDistribution& dist, const DetectorGrid& grid, const RenderOptions& options) {
  beamline.validate();
  grid.validate();
  dist.validate();
  vdw.validate(mask);
  if (!(mass > 0)) throw DomainError("mass must be positive");
  const double gridStep = options.gridStep > 0 ? options.gridStep : autoGridStep(mask, vdw);
  if (!(options.subBandThreshold > 0)) throw UsageError("sub-band threshold must be positive");

  DetectorImage img;
  img.xGrid = grid.xs();
  img.yGrid = grid.ys();
  const std::size_t ny = img.yGrid.size(), nx = img.xGrid.size();
  img.intensity.assign(ny * nx, 0.0);
  img.heightVelocityMap.resize(ny);
  img.bandMin.resize(ny);
  img.bandMax.resize(ny);
  img.rowWeight.resize(ny);
  for (std::size_t r = 0; r < ny; ++r) {
    const RowBand rb = rowBand(beamline, options, img.yGrid[r], grid.dy());
    img.heightVelocityMap[r] = rb.label;
    img.bandMin[r] = rb.vMin;
    img.bandMax[r] = rb.vMax;
    img.rowWeight[r] = probabilityInBand(dist, rb.vMin, rb.vMax);
  }
  for (std::size_t r = 1; r < ny; ++r)
    if (!(img.heightVelocityMap[r] < img.heightVelocityMap[r - 1]))
      throw DomainError("height to velocity map is not monotone on this grid");

  const double dx = grid.dx();
  std::vector<double> kernel{1.0};
  if (options.collimation) {
    const double aperture = beamline.s2 ? *beamline.s2 : mask.width();
    kernel = CollimationKernel::fromGeometry(beamline.s1, aperture, beamline.L1, beamline.L2).discretize(dx);
  }
  const double flight = beamline.totalLength();
  const double width = mask.width() * std::cos(mask.rotation);

  std::atomic<std::size_t> done{0};
  std::mutex progressMutex;
  parallelFor(
      ny,
      [&](std::size_t r) {
        const double w = img.rowWeight[r];
        if (w > 0) {
          // speeds representing the row
          std::vector<double> speeds, weights;
          const double lo = img.bandMin[r], hi = img.bandMax[r];
          if (dist.kind == VelocityKind::Delta) {
            speeds = {dist.v0};
          } else if (std::isfinite(hi) && (hi - lo) / img.heightVelocityMap[r] > options.subBandThreshold) {
            const int k = static_cast<int>(std::ceil((hi - lo) / img.heightVelocityMap[r] / options.subBandThreshold)) + 1;
            for (int i = 0; i < k; ++i) speeds.push_back(lo + (hi - lo) * (i + 0.5) / k);
          } else {
            speeds = {img.heightVelocityMap[r]};
          }
          for (double v : speeds) weights.push_back(speeds.size() > 1 ? velocityPdf(dist, v) : 1.0);
          double wsum = 0;
          for (double x : weights) wsum += x;
          if (!(wsum > 0)) {
            std::fill(weights.begin(), weights.end(), 1.0);
            wsum = static_cast<double>(weights.size());
          }

          std::vector<double> row(nx, 0.0), xs;
          for (std::size_t k = 0; k < speeds.size(); ++k) {
            const double v = speeds[k];
            const double lambda = deBroglieWavelength(mass, v);
            const double shift = options.coriolis ? coriolisShift(v, beamline.latitude, flight) : 0.0;
            // a pixel collects the intensity over its width; sample twice per finest fringe period
            const double fringe = lambda * beamline.L2 / width;
            const auto sub = static_cast<std::size_t>(
                std::clamp(std::ceil(2 * dx / fringe), 1.0, static_cast<double>(options.maxPixelSubsamples)));
            xs.resize(nx * sub);
            for (std::size_t i = 0; i < nx; ++i)
              for (std::size_t j = 0; j < sub; ++j)
                xs[i * sub + j] = img.xGrid[i] - shift + dx * ((j + 0.5) / static_cast<double>(sub) - 0.5);
            const auto t = buildTransmission(mask, vdw, v, gridStep);
            const auto ff = farField(t, lambda, beamline.L2, xs, FarFieldNorm::Probability, 1);
            const double wk = weights[k] / wsum / static_cast<double>(sub);
            for (std::size_t i = 0; i < nx; ++i)
              for (std::size_t j = 0; j < sub; ++j) row[i] += wk * ff.intensity[i * sub + j];
          }
          if (kernel.size() > 1) row = convolveSame(row, kernel);
          double sum = 0;
          for (double x : row) sum += x;
          sum *= dx;
          if (sum > 0)
            for (std::size_t i = 0; i < nx; ++i) img.intensity[r * nx + i] = row[i] * w / sum;
        }
        const std::size_t n = ++done;
        if (options.progress) {
          std::lock_guard lock(progressMutex);
          options.progress(static_cast<double>(n) / static_cast<double>(ny));
        }
      },
      options.threads);
  return img;
}

Trace extractTrace(const DetectorImage& image, double vMin, double vMax, double smoothingCutoff) {
  Trace t;
  t.x = image.xGrid;
  t.intensity.assign(image.cols(), 0.0);
  for (std::size_t r = 0; r < image.rows(); ++r) {
    const double v = image.heightVelocityMap[r];
    if (!(v >= vMin && v <= vMax)) continue;
    ++t.rows;
    for (std::size_t c = 0; c < image.cols(); ++c) t.intensity[c] += image.at(r, c);
  }
  if (smoothingCutoff > 0 && t.x.size() > 1) t.intensity = lowPass(t.intensity, t.x[1] - t.x[0], smoothingCutoff);
  return t;
}

}  // namespace slitworks
