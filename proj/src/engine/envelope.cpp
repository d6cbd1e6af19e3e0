#include "slitworks/engine/envelope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "slitworks/core/formulas.hpp"
#include "slitworks/engine/farfield.hpp"
#include "slitworks/engine/transmission.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::log(2.0));

struct Normalized {
  std::vector<double> x, y;
};

double cost(const Normalized& d, const Eigen::Vector3d& p) {
  double s = 0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double u = (d.x[i] - p[1]) / p[2];
    const double r = p[0] * std::exp(-0.5 * u * u) - d.y[i];
    s += r * r;
  }
  return s;
}

}  // namespace

EnvelopeFit fitEnvelope(const std::vector<Peak>& peaks, const FitOptions& options) {
  if (peaks.size() < 3) throw UsageError("envelope fit needs at least 3 peaks");
  double sw = 0, sx = 0, ymax = 0;
  for (const auto& p : peaks) {
    if (!std::isfinite(p.position) || !std::isfinite(p.intensity)) throw UsageError("non-finite peak");
    sw += p.intensity;
    sx += p.intensity * p.position;
    ymax = std::max(ymax, p.intensity);
  }
  if (!(sw > 0) || !(ymax > 0)) throw FitError("peak intensities sum to zero", 0, 0);
  const double c0 = sx / sw;
  double sxx = 0;
  for (const auto& p : peaks) sxx += p.intensity * (p.position - c0) * (p.position - c0);
  double s0 = std::sqrt(sxx / sw);
  if (!(s0 > 0)) throw FitError("peaks collapse to one position", 0, 0);

  // work in units of the moment estimates
  Normalized d;
  for (const auto& p : peaks) {
    d.x.push_back((p.position - c0) / s0);
    d.y.push_back(p.intensity / ymax);
  }
  Eigen::Vector3d p(1.0, 0.0, 1.0);
  double c = cost(d, p), lambda = 1e-3;
  int it = 0;
  bool converged = false;
  for (; it < options.maxIterations; ++it) {
    Eigen::Matrix3d JtJ = Eigen::Matrix3d::Zero();
    Eigen::Vector3d Jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < d.x.size(); ++i) {
      const double u = (d.x[i] - p[1]) / p[2];
      const double e = std::exp(-0.5 * u * u);
      const double r = p[0] * e - d.y[i];
      const Eigen::Vector3d J(e, p[0] * e * u / p[2], p[0] * e * u * u / p[2]);
      JtJ += J * J.transpose();
      Jtr += J * r;
    }
    Eigen::Matrix3d A = JtJ;
    for (int k = 0; k < 3; ++k) A(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
    const Eigen::Vector3d step = A.ldlt().solve(-Jtr);
    if (!step.allFinite()) break;
    const Eigen::Vector3d trial = p + step;
    const double rel = step.norm() / std::max(p.norm(), 1e-300);
    const double ct = trial[2] > 0 ? cost(d, trial) : INFINITY;
    if (ct <= c) {
      p = trial;
      c = ct;
      lambda = std::max(lambda / 3, 1e-12);
    } else {
      lambda *= 3;
    }
    if (rel < options.relativeStep) {
      converged = true;
      ++it;
      break;
    }
  }
  const double rms = std::sqrt(c / static_cast<double>(d.x.size()));
  if (!converged || !(p[2] > 0) || !p.allFinite())
    throw FitError("Gaussian envelope fit did not converge after " + std::to_string(it) +
                       " iterations (relative rms residual " + std::to_string(rms) + ")",
                   rms, it);
  EnvelopeFit f{};
  f.amplitude = p[0] * ymax;
  f.center = c0 + p[1] * s0;
  f.sigma = std::abs(p[2]) * s0;
  f.fwhm = kFwhmPerSigma * f.sigma;
  f.residual = rms;
  f.iterations = it;
  return f;
}

double fwhmToEffectiveSlit(double fwhm, double lambda, double L2) {
  if (!(fwhm > 0)) throw DomainError("FWHM must be positive");
  // widthAtDetector is linear in 1/s
  return widthAtDetector(lambda, L2, 1.0) / fwhm;
}

std::vector<Peak> extractOrderPeaks(const std::vector<double>& x, const std::vector<double>& intensity,
                                    double spacing, double center, double threshold) {
  if (x.size() != intensity.size() || x.size() < 3) throw UsageError("trace too short or size mismatch");
  if (!(spacing > 0)) throw UsageError("order spacing must be positive");
  const std::size_t n = x.size();
  const long nLo = static_cast<long>(std::ceil((x.front() - center) / spacing + 0.5));
  const long nHi = static_cast<long>(std::floor((x.back() - center) / spacing - 0.5));
  std::vector<Peak> peaks;
  std::size_t i = 0;
  for (long order = nLo; order <= nHi; ++order) {
    const double lo = center + (order - 0.5) * spacing, hi = lo + spacing;
    double area = 0, moment = 0;
    while (i < n && x[i] < lo) ++i;
    for (; i < n && x[i] < hi; ++i) {
      const double w = 0.5 * (x[std::min(i + 1, n - 1)] - x[i == 0 ? 0 : i - 1]);
      area += intensity[i] * w;
      moment += intensity[i] * w * x[i];
    }
    if (area > 0) peaks.push_back({moment / area, area});
  }
  double top = 0;
  for (const auto& p : peaks) top = std::max(top, p.intensity);
  std::erase_if(peaks, [&](const Peak& p) { return p.intensity < threshold * top; });
  return peaks;
}

double traceFwhm(const std::vector<double>& x, const std::vector<double>& intensity) {
  if (x.size() != intensity.size() || x.size() < 3) throw UsageError("trace too short or size mismatch");
  const auto it = std::max_element(intensity.begin(), intensity.end());
  const std::size_t m = static_cast<std::size_t>(it - intensity.begin());
  const double half = *it / 2;
  std::size_t l = m, r = m;
  while (l > 0 && intensity[l] >= half) --l;
  while (r + 1 < intensity.size() && intensity[r] >= half) ++r;
  if (intensity[l] >= half || intensity[r] >= half) throw DomainError("trace does not drop to half maximum");
  auto cross = [&](std::size_t a, std::size_t b) {
    return x[a] + (half - intensity[a]) * (x[b] - x[a]) / (intensity[b] - intensity[a]);
  };
  return cross(r - 1, r) - cross(l, l + 1);
}

EnvelopeAnalysis analyzeEnvelope(const EnvelopeConfig& cfg) {
  if (!(cfg.vMin > 0) || cfg.vMax < cfg.vMin) throw DomainError("velocity band must satisfy 0 < vMin <= vMax");
  if (cfg.vSamples < 1) throw UsageError("need at least one velocity sample");
  if (!(cfg.detectorStep > 0)) throw UsageError("detector step must be positive");
  const EffectiveGeometry eg = effectiveGeometry(cfg.mask);
  EnvelopeAnalysis out;
  const double vMid = 0.5 * (cfg.vMin + cfg.vMax);
  out.lambda = deBroglieWavelength(cfg.mass, vMid);
  out.dEff = eg.dEff;

  double half = cfg.detectorHalfWidth;
  if (!(half > 0)) half = 5 * widthAtDetector(deBroglieWavelength(cfg.mass, cfg.vMin), cfg.L2, eg.sEffGeo);
  const long m = static_cast<long>(std::ceil(half / cfg.detectorStep));
  for (long i = -m; i <= m; ++i) out.x.push_back(static_cast<double>(i) * cfg.detectorStep);
  out.trace.assign(out.x.size(), 0.0);

  for (int k = 0; k < cfg.vSamples; ++k) {
    const double v = cfg.vSamples == 1 ? vMid : cfg.vMin + (cfg.vMax - cfg.vMin) * k / (cfg.vSamples - 1);
    const auto t = buildTransmission(cfg.mask, cfg.vdw, v, cfg.gridStep);
    const auto ff = farField(t, deBroglieWavelength(cfg.mass, v), cfg.L2, out.x, FarFieldNorm::Probability,
                             cfg.threads);
    for (std::size_t i = 0; i < out.trace.size(); ++i) out.trace[i] += ff.intensity[i] / cfg.vSamples;
  }
  if (cfg.kernel) out.trace = convolveSame(out.trace, cfg.kernel->discretize(cfg.detectorStep));

  if (cfg.mask.slitCount == 1) {
    out.fwhm = traceFwhm(out.x, out.trace);
  } else {
    const double spacing = out.lambda * cfg.L2 / eg.dEff;
    out.peaks = extractOrderPeaks(out.x, out.trace, spacing, 0.0, cfg.peakThreshold);
    out.fit = fitEnvelope(out.peaks);
    out.fwhm = out.fit->fwhm;
  }
  out.sEff = fwhmToEffectiveSlit(out.fwhm, out.lambda, cfg.L2);
  return out;
}

double calibrateC3(EnvelopeConfig config, double targetSEff, double c3Lo, double c3Hi, double tolerance) {
  if (!(c3Hi > c3Lo) || c3Lo < 0) throw UsageError("calibration bracket must satisfy 0 <= lo < hi");
  config.vdw.enabled = true;
  auto sEffAt = [&](double c3) {
    config.vdw.c3 = c3;
    return analyzeEnvelope(config).sEff;
  };
  double lo = c3Lo, hi = c3Hi;
  if (sEffAt(lo) < targetSEff) throw DomainError("target effective width is above the bracket");
  if (sEffAt(hi) > targetSEff) throw DomainError("target effective width is below the bracket");
  while (hi - lo > tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    (sEffAt(mid) > targetSEff ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace slitworks
