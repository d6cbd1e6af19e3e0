#include "slitworks/engine/farfield.hpp"

#include <algorithm>
#include <cmath>

#include "slitworks/core/constants.hpp"
#include "slitworks/engine/parallel.hpp"
#include "slitworks/errors.hpp"

namespace slitworks {
namespace {

using cd = std::complex<double>;

// Recurrence steps between exact re-evaluations of the phasor.
constexpr std::size_t kReseed = 128;

double sinc(double x) { return std::abs(x) < 1e-6 ? 1 - x * x / 6 : std::sin(x) / x; }

cd phasorSum(const std::vector<cd>& c, double q, double step) {
  cd sum{}, z{1.0, 0.0};
  const cd w = std::polar(1.0, q * step);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i % kReseed == 0) z = std::polar(1.0, q * step * static_cast<double>(i));
    sum += c[i] * z;
    z *= w;
  }
  return sum;
}

}  // namespace

std::vector<cd> fourierIntegral(const TransmissionFunction& t, const std::vector<double>& q, unsigned threads) {
  std::vector<cd> out(q.size());
  if (t.slitStart.empty()) return out;
  const double first = t.x(t.slitStart.front());
  std::vector<double> offsets;
  for (std::size_t s : t.slitStart) offsets.push_back(t.x(s) - first);
  parallelFor(
      q.size(),
      [&](std::size_t i) {
        const double qi = q[i];
        const cd profile = phasorSum(t.slitProfile, qi, t.dx);
        cd lattice{};
        for (double o : offsets) lattice += std::polar(1.0, qi * o);
        out[i] = t.dx * sinc(qi * t.dx / 2) * profile * lattice * std::polar(1.0, qi * first);
      },
      threads);
  return out;
}

FarFieldResult farField(const TransmissionFunction& t, double lambda, double L2, const std::vector<double>& xDetector,
                        FarFieldNorm norm, unsigned threads) {
  if (!(lambda > 0) || !(L2 > 0)) throw DomainError("wavelength and L2 must be positive");
  const double k = 2 * constants::pi / lambda;
  std::vector<double> q(xDetector.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = k * xDetector[i] / L2;
  const auto F = fourierIntegral(t, q, threads);

  FarFieldResult r;
  r.intensity.resize(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) r.intensity[i] = std::norm(F[i]);
  if (norm == FarFieldNorm::Peak) {
    const double mx = r.intensity.empty() ? 0 : *std::max_element(r.intensity.begin(), r.intensity.end());
    if (mx > 0)
      for (double& v : r.intensity) v /= mx;
  } else {
    for (double& v : r.intensity) v /= lambda * L2;
  }

  if (xDetector.size() > 1 && !t.slitStart.empty()) {
    const double extent = t.x(t.slitStart.back()) - t.x(t.slitStart.front()) + t.slitProfile.size() * t.dx;
    const double fringe = lambda * L2 / extent;
    double maxStep = 0;
    for (std::size_t i = 1; i < xDetector.size(); ++i)
      maxStep = std::max(maxStep, std::abs(xDetector[i] - xDetector[i - 1]));
    r.undersampled = maxStep > fringe / 2;
  }
  return r;
}

}  // namespace slitworks
