#include "slitworks/engine/fresnel.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"
#include "slitworks/core/constants.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace detail {

std::mutex& fftwPlannerMutex() {
  static std::mutex m;
  return m;
}

ComplexFft::ComplexFft(std::size_t n) : n_(n) {
  std::lock_guard lock(fftwPlannerMutex());
  buf_ = fftw_alloc_complex(n);
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() {
  std::lock_guard lock(fftwPlannerMutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(buf_);
}

}  // namespace detail

WaveField WaveField::fromTransmission(const TransmissionFunction& t, double lambda) {
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  WaveField f;
  f.dx = t.dx;
  f.x0 = t.x0;
  f.wavelength = lambda;
  f.psi = t.samples();
  return f;
}

double WaveField::norm() const {
  double s = 0;
  for (const auto& c : psi) s += std::norm(c);
  return s * dx;
}

std::vector<double> WaveField::intensity() const {
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = std::norm(psi[i]);
  return out;
}

std::size_t requiredFresnelSamples(double dx, double lambda, double dz) {
  // Chirp exp(-i pi lambda dz f^2) on df = 1/(n dx): phase step at f = 1/(2 dx) is pi lambda dz/(n dx^2).
  const double need = lambda * dz / (dx * dx);
  std::size_t n = 2;
  while (static_cast<double>(n) < need) n <<= 1;
  return n;
}

WaveField fresnelPropagate(const WaveField& field, double dz) {
  if (dz < 0) throw DomainError("propagation distance must be non-negative");
  const std::size_t n = field.psi.size();
  if (n == 0 || (n & (n - 1)) != 0) throw UsageError("wave field size must be a power of two");
  WaveField out = field;
  out.z = field.z + dz;
  if (dz == 0) return out;
  const std::size_t need = requiredFresnelSamples(field.dx, field.wavelength, dz);
  if (need > n)
    throw AliasingError("Fresnel transfer function aliases for dz = " + std::to_string(dz) + " m on " +
                            std::to_string(n) + " samples; need at least " + std::to_string(need),
                        need);

  detail::ComplexFft fft(n);
  std::complex<double>* a = fft.data();
  for (std::size_t i = 0; i < n; ++i) a[i] = field.psi[i];
  fft.forward();
  const double df = 1.0 / (static_cast<double>(n) * field.dx);
  const double c = -constants::pi * field.wavelength * dz;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = (k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n)) * df;
    a[k] *= std::polar(1.0 / static_cast<double>(n), c * f * f);
  }
  fft.backward();
  for (std::size_t i = 0; i < n; ++i) out.psi[i] = a[i];
  return out;
}

}  // namespace slitworks
