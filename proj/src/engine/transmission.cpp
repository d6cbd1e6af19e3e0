#include "slitworks/engine/transmission.hpp"

#include <cmath>
#include <string>

#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

std::size_t nextPow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Cells per slit n >= nMin such that n * ratio (period in cells) is closest to an integer.
std::size_t snapSlitCells(std::size_t nMin, double ratio) {
  std::size_t best = nMin;
  double bestErr = 1.0;
  for (std::size_t n = nMin; n <= 2 * nMin; ++n) {
    const double p = static_cast<double>(n) * ratio;
    const double err = std::abs(p - std::round(p)) / p;
    if (err < bestErr - 1e-15) {
      best = n;
      bestErr = err;
    }
    if (err < 1e-12) break;
  }
  return best;
}

}  // namespace

std::complex<double> TransmissionFunction::at(std::size_t j) const {
  if (slitStart.empty() || j < slitStart.front()) return {};
  const std::size_t rel = j - slitStart.front();
  const std::size_t n = slitProfile.size();
  if (slitStart.size() == 1) return rel < n ? slitProfile[rel] : std::complex<double>{};
  const std::size_t pCells = slitStart[1] - slitStart[0];
  const std::size_t k = rel / pCells, off = rel % pCells;
  if (k >= slitStart.size() || off >= n) return {};
  return slitProfile[off];
}

std::vector<std::complex<double>> TransmissionFunction::samples() const {
  std::vector<std::complex<double>> out(size);
  for (std::size_t s : slitStart)
    for (std::size_t i = 0; i < slitProfile.size(); ++i) out[s + i] = slitProfile[i];
  return out;
}

double TransmissionFunction::transmittedProbability() const {
  double sum = 0;
  for (const auto& c : slitProfile) sum += std::norm(c);
  return sum * dx * static_cast<double>(slitStart.size());
}

double TransmissionFunction::openSupport() const {
  std::size_t open = 0;
  for (const auto& c : slitProfile) open += std::norm(c) > 0;
  return static_cast<double>(open) * dx;
}

TransmissionFunction buildTransmission(const Mask& mask, const VdwParams& vdw, double v, double gridStep,
                                       const GridPolicy& policy) {
  const EffectiveGeometry eg = effectiveGeometry(mask);
  vdw.validate(mask);
  if (!(v > 0)) throw DomainError("velocity must be positive");
  if (!(gridStep > 0)) throw UsageError("grid step must be positive");
  const double open = eg.sEffGeo;
  const double perSlit = open / gridStep;
  if (perSlit < policy.minSamplesPerSlit * (1 - 1e-9))
    throw UsageError("grid step " + std::to_string(gridStep) + " m is too coarse: at least " +
                     std::to_string(policy.minSamplesPerSlit) + " samples per slit required (step <= " +
                     std::to_string(open / policy.minSamplesPerSlit) + " m)");
  const std::size_t nMin = static_cast<std::size_t>(std::ceil(perSlit - 1e-9));
  const int N = mask.slitCount;
  const std::size_t n = N > 1 ? snapSlitCells(nMin, eg.dEff / open) : nMin;

  TransmissionFunction t;
  t.dx = open / static_cast<double>(n);
  const std::size_t pCells = N > 1 ? static_cast<std::size_t>(std::llround(eg.dEff / t.dx)) : n;
  t.periodUsed = N > 1 ? static_cast<double>(pCells) * t.dx : eg.dEff;
  const std::size_t span = static_cast<std::size_t>(N - 1) * pCells + n;
  const double illuminated = std::max(static_cast<double>(span), mask.width() * std::cos(mask.rotation) / t.dx);
  t.size = nextPow2(static_cast<std::size_t>(std::ceil(policy.padFactor * illuminated)));
  const std::size_t first = (t.size - span) / 2;
  for (int k = 0; k < N; ++k) t.slitStart.push_back(first + static_cast<std::size_t>(k) * pCells);
  t.x0 = (0.5 - static_cast<double>(first) - 0.5 * static_cast<double>(span)) * t.dx;

  t.slitProfile.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xLocal = (static_cast<double>(i) + 0.5) * t.dx - open / 2;
    const auto phase = vdwPhase(xLocal, mask, vdw, v);
    t.slitProfile[i] = phase ? std::polar(1.0, *phase) : std::complex<double>{};
  }
  return t;
}

}  // namespace slitworks
