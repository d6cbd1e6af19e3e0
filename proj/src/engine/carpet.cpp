#include "slitworks/engine/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "slitworks/core/constants.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/engine/fresnel.hpp"
#include "slitworks/engine/parallel.hpp"
#include "slitworks/engine/transmission.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

double pearson(const double* a, const double* b, std::size_t n) {
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0 || sbb <= 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TalbotCarpet talbotCarpet(const Mask& mask, double lambda, double zMax, int zSteps, const CarpetOptions& options) {
  if (zSteps < 1) throw UsageError("carpet needs at least one z step");
  if (zMax < 0) throw DomainError("zMax must be non-negative");
  if (options.gridExponent < 8 || options.gridExponent > 24) throw UsageError("grid exponent must be in [8, 24]");
  const EffectiveGeometry eg = effectiveGeometry(mask);
  const std::size_t n = std::size_t{1} << options.gridExponent;
  const double open = eg.sEffGeo;

  // finest spacing the transfer function tolerates at zMax on n samples
  const double dxNyquist = std::sqrt(lambda * zMax / static_cast<double>(n));
  int perSlit = options.maxSamplesPerSlit;
  if (dxNyquist > 0) perSlit = std::min(perSlit, static_cast<int>(std::floor(open / dxNyquist)));
  if (perSlit < options.minSamplesPerSlit) {
    const double dx = open / options.minSamplesPerSlit;
    const std::size_t need = requiredFresnelSamples(dx, lambda, zMax);
    throw AliasingError("carpet to z = " + std::to_string(zMax) + " m needs a grid of at least " +
                            std::to_string(need) + " samples at " + std::to_string(options.minSamplesPerSlit) +
                            " samples per slit",
                        need);
  }

  TransmissionFunction t;
  for (;; --perSlit) {
    if (perSlit < options.minSamplesPerSlit)
      throw AliasingError("no grid spacing satisfies the Fresnel sampling condition", n * 2);
    t = buildTransmission(mask, VdwParams{}, 1.0, open / perSlit, GridPolicy{options.minSamplesPerSlit, 4});
    if (t.size <= n && requiredFresnelSamples(t.dx, lambda, zMax) <= n) break;
    if (t.size > n)
      throw UsageError("mask needs " + std::to_string(t.size) + " samples with padding; raise the grid exponent");
  }

  WaveField field = WaveField::fromTransmission(t, lambda);
  {
    // centre the padded transmission inside the n-sample window
    const std::size_t offset = (n - t.size) / 2;
    std::vector<std::complex<double>> psi(n);
    std::copy(field.psi.begin(), field.psi.end(), psi.begin() + static_cast<std::ptrdiff_t>(offset));
    field.psi = std::move(psi);
    field.x0 -= static_cast<double>(offset) * field.dx;
  }

  TalbotCarpet c;
  c.dx = t.dx;
  c.period = t.periodUsed;
  c.talbotLength = mask.slitCount > 1 ? talbotLength(t.periodUsed, lambda) : 0.0;
  c.samplesPerSlit = t.slitProfile.size();
  const double half = options.cropHalfWidth > 0 ? options.cropHalfWidth
                                                : 0.5 * (t.x(t.slitStart.back()) - t.x(t.slitStart.front())) +
                                                      open + 2 * c.period;
  std::size_t lo = n, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(field.x(i)) <= half) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  for (std::size_t i = lo; i <= hi; ++i) c.x.push_back(field.x(i));
  const std::size_t width = c.x.size();
  c.z.resize(static_cast<std::size_t>(zSteps));
  for (int i = 0; i < zSteps; ++i) c.z[i] = zSteps == 1 ? zMax : zMax * i / (zSteps - 1);
  c.intensity.assign(c.z.size() * width, 0.0);

  std::vector<std::complex<double>> spectrum(n);
  {
    detail::ComplexFft fft(n);
    std::copy(field.psi.begin(), field.psi.end(), fft.data());
    fft.forward();
    std::copy(fft.data(), fft.data() + n, spectrum.begin());
  }
  const double df = 1.0 / (static_cast<double>(n) * field.dx);
  parallelFor(
      c.z.size(),
      [&](std::size_t r) {
        detail::ComplexFft fft(n);
        std::complex<double>* a = fft.data();
        const double k = -constants::pi * lambda * c.z[r];
        for (std::size_t j = 0; j < n; ++j) {
          const double f = (j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n)) * df;
          a[j] = spectrum[j] * std::polar(1.0 / static_cast<double>(n), k * f * f);
        }
        fft.backward();
        double* out = c.intensity.data() + r * width;
        for (std::size_t i = 0; i < width; ++i) out[i] = std::norm(a[lo + i]);
      },
      options.threads);
  return c;
}

double revivalCorrelation(const TalbotCarpet& carpet, const std::vector<double>& a, const std::vector<double>& b,
                          double halfWindow) {
  if (a.size() != carpet.x.size() || b.size() != carpet.x.size()) throw UsageError("row size mismatch");
  std::size_t lo = carpet.x.size(), hi = 0;
  for (std::size_t i = 0; i < carpet.x.size(); ++i)
    if (std::abs(carpet.x[i]) <= halfWindow) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  if (lo > hi) throw UsageError("correlation window is empty");
  const std::size_t len = hi - lo + 1;
  const long shifts = std::max(1L, std::lround(carpet.period / carpet.dx));
  double best = -1.0;
  for (long s = -shifts / 2; s <= shifts / 2; ++s) {
    const long start = static_cast<long>(lo) + s;
    if (start < 0 || start + static_cast<long>(len) > static_cast<long>(b.size())) continue;
    best = std::max(best, pearson(a.data() + lo, b.data() + start, len));
  }
  return best;
}

double rescaledOrderPosition(double L2, double lambda, double d, int slitCount) {
  const double LT = talbotLength(d, lambda);
  if (!(L2 > 0)) throw DomainError("L2 must be positive");
  return L2 * lambda / d * (1.0 + slitCount * LT / (6.0 * L2));
}

}  // namespace slitworks
