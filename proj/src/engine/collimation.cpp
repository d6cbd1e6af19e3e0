#include "slitworks/engine/collimation.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {

CollimationKernel CollimationKernel::fromGeometry(double s1, double apertureWidth, double L1, double L2) {
  if (!(L1 > 0) || !(L2 > 0)) throw DomainError("L1 and L2 must be positive");
  if (s1 < 0 || apertureWidth < 0) throw DomainError("widths must be non-negative");
  return {s1 * L2 / L1, apertureWidth * (L1 + L2) / L1};
}

double CollimationKernel::value(double x) const {
  const double M = std::max(a, b), m = std::min(a, b), p = std::abs(x);
  if (M == 0) return 0.0;
  const double lo = (M - m) / 2, hi = (M + m) / 2;
  if (p <= lo) return 1.0 / M;
  if (p >= hi) return 0.0;
  return (hi - p) / (M * m);
}

double CollimationKernel::cumulative(double x) const {
  const double M = std::max(a, b), m = std::min(a, b), p = std::abs(x);
  double half;
  if (M == 0) {
    half = 0.5;
  } else {
    const double lo = (M - m) / 2, hi = (M + m) / 2;
    if (p <= lo)
      half = p / M;
    else if (p >= hi)
      half = 0.5;
    else
      half = lo / M + (hi * (p - lo) - 0.5 * (p * p - lo * lo)) / (M * m);
  }
  if (x == 0 && M == 0) return 0.5;
  return x >= 0 ? 0.5 + half : 0.5 - half;
}

double CollimationKernel::fwhm() const { return std::max(a, b); }

std::vector<double> CollimationKernel::discretize(double dx) const {
  if (!(dx > 0)) throw UsageError("kernel spacing must be positive");
  const double hi = 0.5 * (a + b);
  if (hi == 0) return {1.0};
  const long K = std::max(0L, static_cast<long>(std::ceil(hi / dx - 0.5)));
  std::vector<double> w;
  w.reserve(2 * K + 1);
  for (long j = -K; j <= K; ++j) w.push_back(cumulative((j + 0.5) * dx) - cumulative((j - 0.5) * dx));
  double sum = 0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

std::vector<double> convolveSame(const std::vector<double>& signal, const std::vector<double>& kernel) {
  if (kernel.size() % 2 == 0) throw UsageError("kernel length must be odd");
  const long n = static_cast<long>(signal.size()), half = static_cast<long>(kernel.size() / 2);
  std::vector<double> out(signal.size(), 0.0);
  for (long i = 0; i < n; ++i) {
    double s = 0;
    const long jlo = std::max(-half, i - n + 1), jhi = std::min(half, i);
    for (long j = jlo; j <= jhi; ++j) s += kernel[static_cast<std::size_t>(j + half)] * signal[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

std::vector<double> lowPass(const std::vector<double>& signal, double dx, double cutoff) {
  if (!(dx > 0) || !(cutoff > 0)) throw UsageError("low-pass needs positive spacing and cutoff");
  const std::size_t n = signal.size();
  if (n < 2) return signal;
  double* in = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  fftw_plan fwd, bwd;
  {
    std::lock_guard lock(detail::fftwPlannerMutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, in, FFTW_ESTIMATE);
  }
  std::copy(signal.begin(), signal.end(), in);
  fftw_execute(fwd);
  const double df = 1.0 / (static_cast<double>(n) * dx);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    if (static_cast<double>(k) * df > cutoff) {
      spec[k][0] = 0;
      spec[k][1] = 0;
    }
  }
  fftw_execute(bwd);
  std::vector<double> out(in, in + n);
  for (double& v : out) v /= static_cast<double>(n);
  {
    std::lock_guard lock(detail::fftwPlannerMutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

}  // namespace slitworks
