#include "slitworks/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slitworks/core/formulas.hpp"
#include "slitworks/detector/freefall.hpp"
#include "slitworks/engine/collimation.hpp"
#include "slitworks/engine/envelope.hpp"
#include "slitworks/errors.hpp"

namespace slitworks::app {

namespace {

Json axis(const std::vector<double>& v) { return Json(v); }

Json grid(const std::vector<double>& values, std::size_t rows, std::size_t cols, bool arrays) {
  Json g{{"rows", rows}, {"cols", cols}, {"dtype", "float64le"}};
  if (arrays) {
    g["encoding"] = "array";
    g["data"] = values;
  } else {
    g["encoding"] = "base64";
    g["data"] = base64Doubles(values);
  }
  return g;
}

double centroid(const std::vector<double>& x, const std::vector<double>& I) {
  double a = 0, m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += I[i];
    m += I[i] * x[i];
  }
  return a > 0 ? m / a : 0.0;
}

Json envelopeSummary(const Scenario& s, const Trace& trace, double lambda, double dEff) {
  Json e;
  try {
    double fwhm;
    if (s.mask.slitCount == 1) {
      fwhm = traceFwhm(trace.x, trace.intensity);
      e["method"] = "central_lobe";
    } else {
      const double spacing = lambda * s.beamline.L2 / dEff;
      const auto peaks = extractOrderPeaks(trace.x, trace.intensity, spacing, centroid(trace.x, trace.intensity),
                                           s.options.peakThreshold);
      if (peaks.size() < 3) throw DomainError("fewer than three diffraction orders above threshold");
      const auto fit = fitEnvelope(peaks);
      fwhm = fit.fwhm;
      e["method"] = "gaussian_orders";
      e["orders"] = peaks.size();
      e["center"] = fit.center;
      e["residual"] = fit.residual;
    }
    e["fwhm"] = fwhm;
    e["s_eff"] = fwhmToEffectiveSlit(fwhm, lambda, s.beamline.L2);
  } catch (const Error& err) {
    e["error"] = err.what();
  }
  return e;
}

RenderOptions renderOptions(const Scenario& s, const RunControl& control) {
  RenderOptions o;
  o.collimation = s.options.collimation;
  o.coriolis = s.options.coriolis;
  o.subBandThreshold = s.options.subBandThreshold;
  o.gridStep = s.options.gridStep;
  o.heightMapping = s.heightMapping;
  o.selector = s.resolvedSelector();
  o.threads = control.threads;
  o.progress = control.progress;
  return o;
}

}  // namespace

SimulationResult runSimulation(const Scenario& s, const RunControl& control) {
  const EffectiveGeometry eg = effectiveGeometry(s.mask);
  if (s.vdw.enabled) s.vdw.validate(s.mask);

  SimulationResult r;
  r.image = renderImage(s.beamline, s.molecule.mass, s.mask, s.vdw, s.velocity, s.detector, renderOptions(s, control));

  const bool band = s.options.traceVMin.has_value();
  const double vLo = band ? *s.options.traceVMin : 0.0;
  const double vHi = band ? *s.options.traceVMax : std::numeric_limits<double>::infinity();
  const double cutoff = s.options.smoothingPeriod > 0 ? 1.0 / s.options.smoothingPeriod : 0.0;
  r.trace = extractTrace(r.image, vLo, vHi, cutoff);

  if (s.options.arrivals > 0)
    r.arrivals = sampleArrivals(r.image, static_cast<std::size_t>(s.options.arrivals), s.seed);

  const double vRef = s.referenceSpeed();
  const double lambda = deBroglieWavelength(s.molecule.mass, vRef);
  Json sum;
  sum["scenario"] = s.name;
  sum["inputs_digest"] = scenarioDigest(s);
  sum["reference_speed"] = vRef;
  sum["lambda"] = lambda;
  sum["d_eff"] = eg.dEff;
  sum["s_eff_geo"] = eg.sEffGeo;
  sum["coherence"] = {
      {"transverse_first_zeros", transverseCoherenceWidth(s.beamline.L1, lambda, s.beamline.s1, CoherenceConvention::FirstZeros)},
      {"transverse_fwhm", transverseCoherenceWidth(s.beamline.L1, lambda, s.beamline.s1, CoherenceConvention::Fwhm)}};
  if (band)
    sum["coherence"]["longitudinal"] =
        longitudinalCoherenceLength(lambda, vRef, vHi - vLo, LongitudinalConvention::Fwhm);
  if (s.mask.slitCount > 1) sum["talbot_length"] = talbotLength(eg.dEff, lambda);
  sum["far_field_distance"] = farFieldDistance(s.mask.width(), lambda, FarFieldConvention::MainText);
  sum["fall_height"] = fallHeight(vRef, s.beamline.totalLength());
  if (s.options.collimation) {
    const double aperture = s.beamline.s2 ? *s.beamline.s2 : s.mask.width();
    sum["collimation_kernel_fwhm"] =
        CollimationKernel::fromGeometry(s.beamline.s1, aperture, s.beamline.L1, s.beamline.L2).fwhm();
  }

  // row weights are band probabilities; neighbouring bands overlap when the selector opening
  // exceeds a row, so the sum is not a total probability
  double vMin = INFINITY, vMax = 0, bMin = INFINITY, bMax = 0, weight = 0;
  for (std::size_t i = 0; i < r.image.rows(); ++i) {
    weight += r.image.rowWeight[i];
    if (r.image.rowWeight[i] > 0) {
      vMin = std::min(vMin, r.image.heightVelocityMap[i]);
      vMax = std::max(vMax, r.image.heightVelocityMap[i]);
      bMin = std::min(bMin, r.image.bandMin[i]);
      bMax = std::max(bMax, r.image.bandMax[i]);
    }
  }
  sum["velocity_span"] = weight > 0 ? Json::array({vMin, vMax}) : Json::array();
  sum["band_span"] = weight > 0 ? Json::array({bMin, bMax}) : Json::array();
  sum["row_weight_sum"] = weight;
  sum["trace"] = {{"rows", r.trace.rows}, {"v_min", vLo}, {"v_max", band ? Json(vHi) : Json(nullptr)}};
  if (band || s.velocity.kind == VelocityKind::Delta)
    sum["envelope"] = envelopeSummary(s, r.trace, lambda, eg.dEff);
  sum["arrivals"] = r.arrivals.size();
  r.summary = std::move(sum);
  return r;
}

CarpetResult runCarpet(const Scenario& s, const RunControl& control) {
  if (!s.carpet) throw UsageError("scenario has no carpet section");
  const auto& cs = *s.carpet;
  const double speed = cs.speed ? *cs.speed : s.referenceSpeed();
  const double lambda = cs.wavelength ? *cs.wavelength : deBroglieWavelength(s.molecule.mass, speed);
  const int steps = cs.zMax > 0 ? cs.zSteps : 1;

  CarpetOptions opt;
  opt.gridExponent = cs.gridExponent;
  opt.cropHalfWidth = cs.cropHalfWidth;
  opt.threads = control.threads;
  CarpetResult r;
  r.carpet = talbotCarpet(s.mask, lambda, cs.zMax, steps, opt);
  if (control.progress) control.progress(1.0);

  const auto& c = r.carpet;
  Json sum;
  sum["scenario"] = s.name;
  sum["inputs_digest"] = scenarioDigest(s);
  sum["wavelength"] = lambda;
  sum["dx"] = c.dx;
  sum["samples_per_slit"] = c.samplesPerSlit;
  sum["period"] = c.period;
  Json revivals = Json::array();
  if (s.mask.slitCount > 1 && c.z.size() > 1) {
    sum["talbot_length"] = c.talbotLength;
    sum["far_field_onset"] = (s.mask.slitCount - 1) * c.talbotLength;
    const std::vector<double> first(c.row(0), c.row(0) + c.x.size());
    const double window = 2 * c.period;
    const double dz = c.z[1] - c.z[0];
    for (int k = 1; k * c.talbotLength <= c.z.back() + dz / 2; ++k) {
      const auto i = static_cast<std::size_t>(std::lround(k * c.talbotLength / dz));
      if (i >= c.z.size()) break;
      const std::vector<double> row(c.row(i), c.row(i) + c.x.size());
      revivals.push_back({{"k", k}, {"z", c.z[i]}, {"correlation", revivalCorrelation(c, first, row, window)}});
    }
  }
  sum["revivals"] = revivals;
  r.summary = std::move(sum);
  return r;
}

std::vector<OutputFile> simulationOutputs(const Scenario& s, const SimulationResult& r, ImageFormat format) {
  const auto& im = r.image;
  std::vector<OutputFile> out;
  const std::string base = s.name + "_";
  switch (format) {
    case ImageFormat::Csv: out.push_back({base + "image.csv", imageCsv(im.xGrid, im.yGrid, im.intensity)}); break;
    case ImageFormat::Pgm: out.push_back({base + "image.pgm", pgm(im.intensity, im.cols(), im.rows())}); break;
    case ImageFormat::Png: out.push_back({base + "image.png", png(im.intensity, im.cols(), im.rows())}); break;
  }
  out.push_back({base + "trace.csv", traceCsv(r.trace)});
  std::string vel = "y,v,v_min,v_max,weight\n";
  char line[160];
  for (std::size_t i = 0; i < im.rows(); ++i) {
    std::snprintf(line, sizeof line, "%.10e,%.10e,%.10e,%.10e,%.10e\n", im.yGrid[i], im.heightVelocityMap[i],
                  im.bandMin[i], im.bandMax[i], im.rowWeight[i]);
    vel += line;
  }
  out.push_back({base + "velocity.csv", vel});
  if (!r.arrivals.empty()) out.push_back({base + "arrivals.csv", arrivalsCsv(r.arrivals)});
  out.push_back({base + "summary.json", r.summary.dump(2) + "\n"});
  return out;
}

std::vector<OutputFile> carpetOutputs(const Scenario& s, const CarpetResult& r, ImageFormat format) {
  const auto& c = r.carpet;
  std::vector<OutputFile> out;
  const std::string base = s.name + "_carpet";
  switch (format) {
    case ImageFormat::Csv: out.push_back({base + ".csv", imageCsv(c.x, c.z, c.intensity, "z\\x")}); break;
    case ImageFormat::Pgm: out.push_back({base + ".pgm", pgm(c.intensity, c.x.size(), c.z.size())}); break;
    case ImageFormat::Png: out.push_back({base + ".png", png(c.intensity, c.x.size(), c.z.size())}); break;
  }
  out.push_back({base + "_summary.json", r.summary.dump(2) + "\n"});
  return out;
}

Json simulationResponse(const Scenario& s, const SimulationResult& r, bool arrays) {
  const auto& im = r.image;
  Json arr = Json::array();
  for (const auto& e : r.arrivals) arr.push_back({e.x, e.y, e.v});
  return Json{{"scenario", scenarioToJson(s)},
              {"summary", r.summary},
              {"x", axis(im.xGrid)},
              {"y", axis(im.yGrid)},
              {"velocity", axis(im.heightVelocityMap)},
              {"row_weight", axis(im.rowWeight)},
              {"image", grid(im.intensity, im.rows(), im.cols(), arrays)},
              {"trace", {{"x", axis(r.trace.x)}, {"intensity", axis(r.trace.intensity)}}},
              {"arrivals", arr}};
}

Json carpetResponse(const Scenario& s, const CarpetResult& r, bool arrays) {
  const auto& c = r.carpet;
  return Json{{"scenario", scenarioToJson(s)},
              {"summary", r.summary},
              {"x", axis(c.x)},
              {"z", axis(c.z)},
              {"intensity", grid(c.intensity, c.z.size(), c.x.size(), arrays)}};
}

}  // namespace slitworks::app
