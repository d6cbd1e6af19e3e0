// diffraction-engine: mask geometry, vdW phase, far field, Fresnel propagation, carpets, envelopes
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "slitworks/core/constants.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/engine/carpet.hpp"
#include "slitworks/engine/collimation.hpp"
#include "slitworks/engine/envelope.hpp"
#include "slitworks/engine/farfield.hpp"
#include "slitworks/engine/fraunhofer.hpp"
#include "slitworks/engine/fresnel.hpp"
#include "slitworks/engine/mask.hpp"
#include "slitworks/engine/transmission.hpp"
#include "slitworks/errors.hpp"
#include "support/helpers.hpp"

using namespace slitworks;
using constants::pi;
using testsupport::linspace;
using testsupport::maxAbsDiff;

namespace {

const double kMass = 514.54 * constants::u;
const double kMeVnm3 = 1e-3 * constants::eV * 1e-27;

Mask grating(int n, double d, double s, double T = 0, double rot = 0) {
  Mask m;
  m.slitCount = n;
  m.period = d;
  m.slitWidth = s;
  m.thickness = T;
  m.rotation = rot;
  return m;
}

VdwParams vdw(double c3, double cutoff = 2e-9) {
  VdwParams p;
  p.enabled = true;
  p.c3 = c3;
  p.cutoffDistance = cutoff;
  return p;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n, mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_CASE("effective geometry of a rotated mask") {
  const auto m = grating(20, 101e-9, 61e-9, 21e-9, 40 * pi / 180);
  const auto g = effectiveGeometry(m);
  CHECK(g.dEff == doctest::Approx(101e-9 * std::cos(40 * pi / 180)));
  CHECK(g.sEffGeo == doctest::Approx(61e-9 * std::cos(40 * pi / 180) - 21e-9 * std::sin(40 * pi / 180)));
  // negative angles close the window the same way
  CHECK(effectiveGeometry(grating(20, 101e-9, 61e-9, 21e-9, -40 * pi / 180)).sEffGeo == doctest::Approx(g.sEffGeo));
  CHECK_THROWS_AS(effectiveGeometry(grating(20, 101e-9, 61e-9, 21e-9, 80 * pi / 180)), OpaqueAtAngleError);
  CHECK_THROWS_AS(grating(2, 50e-9, 80e-9).validate(), DomainError);
  CHECK_THROWS_AS(grating(2, 0, 80e-9).validate(), DomainError);
  CHECK_THROWS_AS(grating(1, 0, 80e-9, 0, pi / 2).validate(), DomainError);
  CHECK(grating(10, 100e-9, 50e-9).width() == doctest::Approx(1e-6));
}

TEST_CASE("cutoff band that swallows the window is opaque") {
  const auto m = grating(20, 101e-9, 61e-9, 21e-9, 60 * pi / 180);  // 12.3 nm open
  CHECK_NOTHROW(vdw(0, 6e-9).validate(m));
  CHECK_THROWS_AS(vdw(0, 6.5e-9).validate(m), OpaqueAtAngleError);
}

TEST_CASE("eikonal wall phase at normal incidence") {
  const auto m = grating(3, 100e-9, 80e-9, 21e-9);
  const auto p = vdw(10 * kMeVnm3);
  const double v = 145;
  for (double x : {-30e-9, -10e-9, 0.0, 7e-9, 25e-9}) {
    const double y1 = 40e-9 + x, y2 = 40e-9 - x;
    const double expect = p.c3 * 21e-9 / (constants::hbar * v) * (1 / (y1 * y1 * y1) + 1 / (y2 * y2 * y2));
    REQUIRE(vdwPhase(x, m, p, v).has_value());
    CHECK(*vdwPhase(x, m, p, v) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(*vdwPhase(x, m, p, v) == doctest::Approx(*vdwPhase(-x, m, p, v)));
  }
  CHECK_FALSE(vdwPhase(39e-9, m, p, v).has_value());  // 1 nm from the wall, inside the cutoff
  CHECK_FALSE(vdwPhase(41e-9, m, p, v).has_value());  // outside the window
  CHECK(*vdwPhase(0, m, vdw(0), v) == 0.0);
  // slower molecules spend longer near the wall
  CHECK(*vdwPhase(20e-9, m, p, 100) > *vdwPhase(20e-9, m, p, 200));
}

TEST_CASE("eikonal wall phase through a tilted slab matches quadrature along the path") {
  const double th = 40 * pi / 180, T = 21e-9;
  const auto m = grating(20, 101e-9, 61e-9, T, th);
  const auto p = vdw(10 * kMeVnm3);
  const double v = 290, open = effectiveGeometry(m).sEffGeo;
  boost::math::quadrature::gauss_kronrod<double, 31> gk;
  // distance to the face grows from y / cos(theta) to y / cos(theta) + T tan(theta) over the depth
  auto wall = [&](double y) {
    return gk.integrate([&](double z) { return std::pow(y / std::cos(th) + z * std::tan(th), -3); }, 0.0, T) /
           std::cos(th);
  };
  for (double x : {-5e-9, 0.0, 3e-9, 6e-9}) {
    const double expect = p.c3 / (constants::hbar * v) * (wall(open / 2 + x) + wall(open / 2 - x));
    CHECK(*vdwPhase(x, m, p, v) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("as-printed phase is odd in x") {
  auto p = vdw(10 * kMeVnm3);
  p.model = PhaseModel::AsPrinted;
  const auto m = grating(3, 100e-9, 80e-9, 21e-9);
  CHECK(*vdwPhase(10e-9, m, p, 145) == doctest::Approx(-*vdwPhase(-10e-9, m, p, 145)));
  CHECK(*vdwPhase(0, m, p, 145) == 0.0);
}

TEST_CASE("transmission grid") {
  const auto m = grating(3, 100e-9, 80e-9, 21e-9);
  const auto t = buildTransmission(m, VdwParams{}, 145, 80e-9 / 64);
  CHECK((t.size & (t.size - 1)) == 0);
  CHECK(t.slitStart.size() == 3);
  CHECK(t.periodUsed == doctest::Approx(100e-9).epsilon(1e-12));
  CHECK(t.transmittedProbability() == doctest::Approx(3 * 80e-9).epsilon(1e-12));
  CHECK(t.openSupport() == doctest::Approx(80e-9));
  const auto tc = buildTransmission(m, vdw(10 * kMeVnm3), 145, 80e-9 / 64);
  CHECK(tc.openSupport() == doctest::Approx(76e-9).epsilon(80e-9 / 64 / 76e-9 + 1e-12));
  // unit modulus inside the window
  for (const auto& c : tc.slitProfile)
    if (std::norm(c) > 0) CHECK(std::abs(c) == doctest::Approx(1.0));
  CHECK_THROWS_AS(buildTransmission(m, VdwParams{}, 145, 10e-9), UsageError);
  CHECK_THROWS_AS(buildTransmission(m, VdwParams{}, 0, 1e-9), DomainError);
}

TEST_CASE("Fraunhofer pattern against the two-slit closed form") {
  const double lambda = 3e-12, d = 100e-9, s = 50e-9;
  const auto th = linspace(-1e-4, 1e-4, 801);
  const auto I = fraunhoferIntensity(grating(2, d, s), lambda, th);
  double worst = 0;
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double b = pi * s * std::sin(th[i]) / lambda, a = pi * d * std::sin(th[i]) / lambda;
    const double sinc = b == 0 ? 1 : std::sin(b) / b;
    worst = std::max(worst, std::abs(I[i] - sinc * sinc * std::cos(a) * std::cos(a)));
  }
  CHECK(worst < 1e-12);
  const auto one = fraunhoferIntensity(grating(1, 0, s), lambda, {0.0, std::asin(lambda / s)});
  CHECK(one[0] == 1.0);
  CHECK(one[1] < 1e-20);
}

TEST_CASE("numerical far field equals the Fraunhofer pattern") {
  const double lambda = deBroglieWavelength(kMass, 145), L2 = 0.59;
  const auto x = linspace(-200e-6, 200e-6, 2001);
  for (int N : {1, 2, 3, 10}) {
    CAPTURE(N);
    const auto m = grating(N, 100e-9, 80e-9);
    const auto t = buildTransmission(m, VdwParams{}, 145, 80e-9 / 64);
    const auto ff = farField(t, lambda, L2, x).intensity;
    CHECK(maxAbsDiff(ff, fraunhoferAtDetector(m, lambda, L2, x)) < 1e-6);
  }
}

TEST_CASE("far field in probability units integrates to the transmitted probability") {
  const double lambda = 3e-12, L2 = 0.59;
  const auto m = grating(10, 100e-9, 50e-9);
  const auto t = buildTransmission(m, VdwParams{}, 250, 50e-9 / 64);
  // wide enough that the sinc^2 tails beyond are ~1e-4 of the total
  const auto x = linspace(-0.4, 0.4, 400001);
  const auto ff = farField(t, lambda, L2, x, FarFieldNorm::Probability).intensity;
  const double integral = std::accumulate(ff.begin(), ff.end(), 0.0) * (x[1] - x[0]);
  CHECK(integral == doctest::Approx(t.transmittedProbability()).epsilon(2e-3));
}

TEST_CASE("far field does not depend on the thread count") {
  const auto m = grating(20, 101e-9, 61e-9, 21e-9);
  const auto t = buildTransmission(m, vdw(10 * kMeVnm3), 290, 61e-9 / 64);
  const auto x = linspace(-300e-6, 300e-6, 3001);
  const auto a = farField(t, 2e-12, 0.59, x, FarFieldNorm::Peak, 1).intensity;
  const auto b = farField(t, 2e-12, 0.59, x, FarFieldNorm::Peak, 3).intensity;
  CHECK(a == b);
}

TEST_CASE("Fresnel propagation conserves the norm") {
  const auto t = buildTransmission(grating(10, 100e-9, 50e-9), VdwParams{}, 250, 50e-9 / 16, GridPolicy{16, 4});
  auto f = WaveField::fromTransmission(t, 3e-12);
  f.psi.resize(1 << 16);
  const double n0 = f.norm();
  for (double z : {1e-4, 3.3e-3, 2e-2}) {
    const auto g = fresnelPropagate(f, z);
    CHECK(std::abs(g.norm() - n0) / n0 < 1e-9);
    CHECK(g.z == z);
  }
  CHECK_THROWS_AS(fresnelPropagate(f, 10.0), AliasingError);
  try {
    fresnelPropagate(f, 10.0);
  } catch (const AliasingError& e) {
    CHECK(e.requiredSamples() == requiredFresnelSamples(f.dx, 3e-12, 10.0));
  }
  CHECK_THROWS_AS(fresnelPropagate(f, -1), DomainError);
}

TEST_CASE("Fresnel propagation approaches the far field") {
  const double lambda = 3e-12, z = 2.0;  // 24 far-field distances for the 500 nm wide grating
  const auto t = buildTransmission(grating(5, 100e-9, 50e-9), VdwParams{}, 250, 50e-9 / 8, GridPolicy{8, 4});
  // embed the grating in the middle of a grid large enough for z
  auto f = WaveField::fromTransmission(t, lambda);
  const std::size_t n = requiredFresnelSamples(f.dx, lambda, z), off = (n - t.size) / 2;
  f.psi.assign(n, {});
  const auto tt = t.samples();
  std::copy(tt.begin(), tt.end(), f.psi.begin() + static_cast<long>(off));
  f.x0 = t.x0 - static_cast<double>(off) * f.dx;
  const auto g = fresnelPropagate(f, z);
  std::vector<double> xs, near;
  for (std::size_t j = 0; j < g.psi.size(); j += 97)
    if (std::abs(g.x(j)) < 150e-6) {
      xs.push_back(g.x(j));
      near.push_back(std::norm(g.psi[j]));
    }
  const auto far = farField(t, lambda, z, xs, FarFieldNorm::Probability).intensity;
  const double peak = *std::max_element(far.begin(), far.end());
  CHECK(maxAbsDiff(near, far) / peak < 0.05);
  CHECK(pearson(near, far) > 0.999);
}

TEST_CASE("Talbot carpet") {
  const auto m = grating(10, 100e-9, 50e-9);
  const double lambda = 3e-12, LT = talbotLength(100e-9, lambda);
  CHECK(LT == doctest::Approx(3.3333333e-3));
  const auto c = talbotCarpet(m, lambda, 12 * LT, 13);
  CHECK(c.z.size() == 13);
  CHECK(c.talbotLength == doctest::Approx(LT).epsilon(1e-6));
  CHECK(c.samplesPerSlit >= 8);
  auto row = [&](std::size_t i) { return std::vector<double>(c.row(i), c.row(i) + c.x.size()); };
  const auto r0 = row(0);
  // the z = 0 row is the binary mask
  for (double v : r0) CHECK((std::abs(v) < 1e-9 || std::abs(v - 1) < 1e-9));
  CHECK(revivalCorrelation(c, r0, row(1), 2 * c.period) > 0.9);
  for (std::size_t k = 9; k <= 12; ++k) CHECK(revivalCorrelation(c, r0, row(k), 2 * c.period) < 0.5);
  // a single step is the row at zMax
  const auto one = talbotCarpet(m, lambda, LT, 1);
  REQUIRE(one.z.size() == 1);
  CHECK(one.z[0] == LT);
  CHECK_THROWS_AS(talbotCarpet(m, lambda, LT, 0), UsageError);
  CHECK_THROWS_AS(talbotCarpet(m, lambda, -1, 4), DomainError);
  CarpetOptions small;
  small.gridExponent = 8;
  CHECK_THROWS_AS(talbotCarpet(m, lambda, 100 * LT, 4, small), DomainError);
}

TEST_CASE("near-field order position") {
  const double L2 = 0.59, l = 3e-12, d = 100e-9;
  CHECK(rescaledOrderPosition(L2, l, d, 10) == doctest::Approx(L2 * l / d * (1 + 10 * d * d / l / (6 * L2))));
}

TEST_CASE("collimation kernel") {
  const auto k = CollimationKernel::fromGeometry(1.7e-6, 300e-9, 1.55, 0.59);
  CHECK(k.a == doctest::Approx(1.7e-6 * 0.59 / 1.55));
  CHECK(k.b == doctest::Approx(300e-9 * 2.14 / 1.55));
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  const double h = k.fullWidth();
  CHECK(gk.integrate([&](double x) { return k.value(x); }, -h, h, 15, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(k.cumulative(-h) == 0.0);
  CHECK(k.cumulative(h) == doctest::Approx(1.0));
  CHECK(k.cumulative(0) == doctest::Approx(0.5));
  // half-maximum width located independently
  const double half = k.value(0) / 2;
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 100;
  const auto r = boost::math::tools::toms748_solve([&](double x) { return k.value(x) - half; }, 0.0, h, tol, it);
  CHECK(2 * r.first == doctest::Approx(k.fwhm()).epsilon(1e-9));
  CHECK(k.fwhm() == doctest::Approx(std::max(k.a, k.b)));
  const auto w = k.discretize(50e-9);
  CHECK(w.size() % 2 == 1);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> sig(401, 0.0);
  sig[200] = 3.0;
  const auto out = convolveSame(sig, w);
  CHECK(std::accumulate(out.begin(), out.end(), 0.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(CollimationKernel::fromGeometry(1e-6, 1e-7, 0, 1), DomainError);
}

TEST_CASE("spectral low-pass") {
  const int n = 1024;
  const double dx = 1e-7, L = n * dx;
  std::vector<double> lo(n), both(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = 2 + std::sin(2 * pi * 3 * i * dx / L);
    both[i] = lo[i] + 0.5 * std::sin(2 * pi * 200 * i * dx / L);
  }
  CHECK(maxAbsDiff(lowPass(both, dx, 50 / L), lo) < 1e-10);
}

TEST_CASE("Gaussian fit recovers its own envelope") {
  const double sigma = 17e-6, sp = 6e-6, A = 2.5;
  std::vector<Peak> peaks;
  for (int n = -12; n <= 12; ++n) {
    const double x = 1.3e-6 + n * sp;
    peaks.push_back({x, A * std::exp(-(x - 1.3e-6) * (x - 1.3e-6) / (2 * sigma * sigma))});
  }
  const auto f = fitEnvelope(peaks);
  CHECK(f.fwhm == doctest::Approx(2 * std::sqrt(2 * std::log(2.0)) * sigma).epsilon(3e-3));
  CHECK(f.center == doctest::Approx(1.3e-6).epsilon(1e-6));
  CHECK(f.amplitude == doctest::Approx(A).epsilon(3e-3));
  CHECK(f.residual < 1e-6);
  CHECK_THROWS_AS(fitEnvelope({{0, 1}, {1, 1}}), UsageError);
}

TEST_CASE("order extraction and fit from a synthetic trace") {
  const double sigma = 20e-6, sp = 10e-6, w = 0.6e-6;
  const auto x = linspace(-120e-6, 120e-6, 4801);
  std::vector<double> y(x.size(), 0.0);
  for (int n = -11; n <= 11; ++n)
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] += std::exp(-n * n * sp * sp / (2 * sigma * sigma)) * std::exp(-std::pow(x[i] - n * sp, 2) / (2 * w * w));
  const auto peaks = extractOrderPeaks(x, y, sp, 0.0, 0.02);
  CHECK(peaks.size() >= 9);
  for (const auto& p : peaks) CHECK(std::abs(p.position - sp * std::round(p.position / sp)) < 1e-9);
  CHECK(fitEnvelope(peaks).fwhm == doctest::Approx(2.35482 * sigma).epsilon(3e-3));
  // central lobe width of a single Gaussian
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::exp(-x[i] * x[i] / (2 * sigma * sigma));
  CHECK(traceFwhm(x, g) == doctest::Approx(2.35482 * sigma).epsilon(1e-3));
}

TEST_CASE("width conversion inverts the single-slit relation") {
  const double l = deBroglieWavelength(kMass, 145);
  for (double s : {20e-9, 53e-9, 80e-9}) CHECK(fwhmToEffectiveSlit(widthAtDetector(l, 0.59, s), l, 0.59) == doctest::Approx(s));
}

TEST_CASE("geometric slit width comes back at C3 = 0") {
  EnvelopeConfig cfg;
  cfg.mask = grating(20, 101e-9, 61e-9);
  cfg.mass = kMass;
  cfg.vMin = 280;
  cfg.vMax = 300;
  cfg.L2 = 0.59;
  const auto a = analyzeEnvelope(cfg);
  CHECK(a.sEff == doctest::Approx(61e-9).epsilon(0.05));
  CHECK(a.dEff == doctest::Approx(101e-9));
}

TEST_CASE("effective slit width shrinks as C3 grows") {
  EnvelopeConfig cfg;
  cfg.mask = grating(3, 100e-9, 80e-9, 21e-9);
  cfg.mass = kMass;
  cfg.vMin = 140;
  cfg.vMax = 150;
  cfg.vSamples = 3;
  cfg.L2 = 0.59;
  double prev = 1;
  for (double c3 : {0.0, 5.0, 10.0, 15.0}) {
    cfg.vdw = vdw(c3 * kMeVnm3);
    const double s = analyzeEnvelope(cfg).sEff;
    CAPTURE(c3);
    CHECK(s < prev);
    prev = s;
  }
}
