// matterwave-core: constants, closed forms, distributions, unit parsing
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "slitworks/core/constants.hpp"
#include "slitworks/core/distributions.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/core/types.hpp"
#include "slitworks/core/units.hpp"
#include "slitworks/errors.hpp"

using namespace slitworks;
namespace q = boost::math::quadrature;

namespace {

const double kMass = 514.54 * 1.66053906660e-27;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// integral of f over [0, inf)
template <class F>
double integrate0inf(F f) {
  q::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

// half-maximum crossings of a single-peaked f on [lo, peak] and [peak, hi]
template <class F>
double fwhmOf(F f, double peak, double lo, double hi) {
  const double half = f(peak) / 2;
  auto g = [&](double v) { return f(v) - half; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 200;
  auto a = boost::math::tools::toms748_solve(g, lo, peak, tol, it);
  it = 200;
  auto b = boost::math::tools::toms748_solve(g, peak, hi, tol, it);
  return (b.first + b.second) / 2 - (a.first + a.second) / 2;
}

}  // namespace

TEST_CASE("constants are the CODATA 2018 values") {
  CHECK(constants::h == 6.62607015e-34);
  CHECK(constants::kB == 1.380649e-23);
  CHECK(constants::u == 1.66053906660e-27);
  CHECK(constants::NA == 6.02214076e23);
  CHECK(constants::eV == 1.602176634e-19);
  CHECK(rel(constants::hbar, 1.054571817e-34) < 1e-9);
  CHECK(std::string(constants::version) == "CODATA-2018;g=9.81;omegaE=7.2e-5");
  CHECK(constants::table().size() >= 8);
  CHECK(constants::tableText().find("hbar") != std::string::npos);
}

TEST_CASE("phthalocyanine mass") {
  CHECK(rel(Molecule::pcH2().mass, kMass) < 1e-15);
  CHECK(Molecule::pcH2().name == "PcH2");
}

TEST_CASE("de Broglie wavelength and its inverse") {
  // 250 m/s phthalocyanine: 3.10 pm
  CHECK(deBroglieWavelength(kMass, 250) == doctest::Approx(3.1015e-12).epsilon(1e-4));
  for (double v = 10; v < 5000; v *= 1.37) {
    const double l = deBroglieWavelength(kMass, v);
    CHECK(rel(speedForWavelength(kMass, l), v) < 1e-14);
  }
  CHECK_THROWS_AS(deBroglieWavelength(kMass, 0), DomainError);
  CHECK_THROWS_AS(deBroglieWavelength(kMass, -3), DomainError);
  CHECK_THROWS_AS(speedForWavelength(0, 1e-12), DomainError);
}

TEST_CASE("single-slit widths") {
  const double l145 = deBroglieWavelength(kMass, 145);
  CHECK(widthAtDetector(l145, 0.59, 80e-9) == doctest::Approx(35.1e-6).epsilon(0.01));
  CHECK(widthAtDetector(l145, 0.59, 53e-9) == doctest::Approx(53.0e-6).epsilon(0.01));
  CHECK(heisenbergMomentumFwhm(80e-9) == doctest::Approx(0.89 * constants::h / 80e-9));
  CHECK(diffractionAngleFwhm(3e-12, 60e-9) == doctest::Approx(0.89 * 3e-12 / 60e-9));

  // 0.89 rounds the exact sinc^2 half-width 0.8859
  auto sinc2 = [](double u) { return u == 0 ? 1.0 : std::pow(std::sin(constants::pi * u) / (constants::pi * u), 2); };
  CHECK(fwhmOf(sinc2, 0.0, -0.99, 0.99) == doctest::Approx(0.89).epsilon(0.005));
}

TEST_CASE("coherence conventions") {
  const double l = 5e-12, L1 = 1.55, s = 1.7e-6;
  const double zeros = transverseCoherenceWidth(L1, l, s, CoherenceConvention::FirstZeros);
  const double fwhm = transverseCoherenceWidth(L1, l, s, CoherenceConvention::Fwhm);
  CHECK(zeros == doctest::Approx(2 * L1 * l / s));
  CHECK(zeros / fwhm == doctest::Approx(2 / 0.89));
  for (auto c : {CoherenceConvention::FirstZeros, CoherenceConvention::Fwhm}) {
    const double x = transverseCoherenceWidth(L1, l, s, c);
    CHECK(rel(sourceWidthForCoherence(L1, l, x, c), s) < 1e-14);
  }
  const double lf = longitudinalCoherenceLength(l, 200, 20, LongitudinalConvention::Fwhm);
  const double lg = longitudinalCoherenceLength(l, 200, 20, LongitudinalConvention::GaussianSigma);
  CHECK(lf == doctest::Approx(l * 10));
  CHECK(lf / lg == doctest::Approx(2 * constants::pi));
  CHECK_THROWS_AS(longitudinalCoherenceLength(l, 200, 0, LongitudinalConvention::Fwhm), DomainError);
}

TEST_CASE("thermal statistics against quadrature of the Maxwell-Boltzmann density") {
  const double T = 900;
  const auto st = thermalStats(T, kMass);
  const auto mb = VelocityDistribution::maxwellBoltzmann(T, kMass);
  auto pdf = [&](double v) { return velocityPdf(mb, v); };
  CHECK(std::abs(integrate0inf(pdf) - 1) < 1e-6);
  CHECK(rel(integrate0inf([&](double v) { return v * pdf(v); }), st.vMean) < 1e-6);
  CHECK(rel(std::sqrt(integrate0inf([&](double v) { return v * v * pdf(v); })), st.vRms) < 1e-6);
  auto peak = boost::math::tools::brent_find_minima([&](double v) { return -pdf(v); }, 1.0, 1000.0, 50);
  CHECK(rel(peak.first, st.vMp) < 1e-6);
  // the quoted 0.993 v_mp is kept as printed; the half-maximum width of v^2 exp(-v^2/v_mp^2) is 1.155 v_mp
  CHECK(st.fwhm == doctest::Approx(0.993 * st.vMp));
  CHECK(fwhmOf(pdf, st.vMp, 1e-3, 10 * st.vMp) / st.vMp == doctest::Approx(1.1549).epsilon(1e-3));
  CHECK(st.vMp < st.vMean);
  CHECK(st.vMean < st.vRms);
}

TEST_CASE("flux-weighted density") {
  const double T = 900;
  const auto fw = VelocityDistribution::fluxWeighted(T, kMass);
  auto pdf = [&](double v) { return velocityPdf(fw, v); };
  CHECK(std::abs(integrate0inf(pdf) - 1) < 1e-6);
  auto peak = boost::math::tools::brent_find_minima([&](double v) { return -pdf(v); }, 1.0, 1000.0, 50);
  CHECK(rel(peak.first, fluxWeightedPeakSpeed(T, kMass)) < 1e-6);
  CHECK(rel(integrate0inf([&](double v) { return v * pdf(v); }), meanSpeed(fw)) < 1e-6);
}

TEST_CASE("cdf matches the integrated density") {
  q::gauss_kronrod<double, 61> gk;
  for (auto d : {VelocityDistribution::maxwellBoltzmann(900, kMass), VelocityDistribution::fluxWeighted(600, kMass),
                 VelocityDistribution::uniformBand(100, 300)}) {
    for (double v : {50.0, 140.0, 150.0, 260.0, 800.0}) {
      // keep the jumps of the uniform density at the interval ends
      const bool box = d.kind == VelocityKind::UniformBand;
      const double lo = box ? std::min(v, d.vMin) : 0.0, hi = box ? std::min(v, d.vMax) : v;
      const double num = gk.integrate([&](double x) { return velocityPdf(d, x); }, lo, hi, 15, 1e-12);
      CHECK(std::abs(velocityCdf(d, v) - num) < 1e-9);
    }
    CHECK(probabilityInBand(d, 140, 150) == doctest::Approx(velocityCdf(d, 150) - velocityCdf(d, 140)));
    const auto [lo, hi] = effectiveSupport(d);
    CHECK(probabilityInBand(d, lo, hi) > 1 - 1e-9);
  }
  const auto dl = VelocityDistribution::delta(258.5);
  CHECK(probabilityInBand(dl, 250, 260) == 1.0);
  CHECK(probabilityInBand(dl, 260, 270) == 0.0);
  CHECK(velocityPdf(dl, 258.5) == 0.0);
}

TEST_CASE("wavelength density") {
  const double T = 900;
  auto pdf = [&](double l) { return wavelengthPdf(T, kMass, l); };
  CHECK(std::abs(integrate0inf(pdf) - 1) < 1e-6);
  const double peak = wavelengthPdfPeak(T, kMass);
  // search in picometres to keep the bracket well scaled
  auto m = boost::math::tools::brent_find_minima([&](double p) { return -pdf(p * 1e-12); }, 0.1, 10.0, 50);
  CHECK(rel(m.first * 1e-12, peak) < 1e-6);
  // change of variables from the flux-weighted speed density
  const auto fw = VelocityDistribution::fluxWeighted(T, kMass);
  for (double l : {1e-12, 3e-12, 6e-12}) {
    const double v = speedForWavelength(kMass, l);
    CHECK(rel(pdf(l), velocityPdf(fw, v) * v / l) < 1e-12);
  }
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(VelocityDistribution::uniformBand(300, 100).validate(), DomainError);
  CHECK_THROWS_AS(VelocityDistribution::maxwellBoltzmann(-1, kMass).validate(), DomainError);
  CHECK_THROWS_AS(VelocityDistribution::delta(0).validate(), DomainError);
  CHECK_THROWS_AS(velocityPdf(VelocityDistribution::fluxWeighted(900, kMass), -1), DomainError);
}

TEST_CASE("source and beam geometry") {
  // log10(P/bar) = A - B/T
  CHECK(rel(vaporPressure(700, 10, 9000), std::pow(10.0, 10 - 9000.0 / 700) * 1e5) < 1e-14);
  // prefactor in hPa, cm^2, u, K
  CHECK(rel(sourceAngularFlux(100, 1e-4, 514.54, 700), 8.4e21 * 1 * 1 / std::sqrt(514.54 * 700)) < 1e-14);
  CHECK(talbotLength(100e-9, 3e-12) == doctest::Approx(3.3333333e-3).epsilon(1e-7));
  const double w = 1e-6, l = 3e-12;
  CHECK(farFieldDistance(w, l, FarFieldConvention::QuadraticPhase) /
            farFieldDistance(w, l, FarFieldConvention::MainText) ==
        doctest::Approx(constants::pi / 4));
  CHECK(collimatedFraction(1e-6 * 1e-6, 1.0, 0.3) == doctest::Approx(0.3e-12 / (2 * constants::pi)));
  CHECK_THROWS_AS(collimatedFraction(1e-12, 1.0, 1.5), DomainError);
}

TEST_CASE("unit parsing") {
  using units::Dimension;
  CHECK(units::parse("80 nm", Dimension::Length) == doctest::Approx(80e-9));
  CHECK(units::parse("80nm", Dimension::Length) == doctest::Approx(80e-9));
  CHECK(units::parse("1.2e-3", Dimension::Length) == 1.2e-3);
  CHECK(units::parse("40 deg", Dimension::Angle) == doctest::Approx(40 * constants::pi / 180));
  CHECK(units::parse("145 m/s", Dimension::Speed) == 145);
  CHECK(units::parse("900 K", Dimension::Temperature) == 900);
  CHECK(units::parse("514.54 u", Dimension::Mass) == doctest::Approx(kMass));
  CHECK(units::parse("10 meV nm^3", Dimension::C3) == doctest::Approx(10e-3 * constants::eV * 1e-27));
  CHECK(units::parse("0.59 m", Dimension::Length) == 0.59);
  CHECK_THROWS_AS(units::parse("80 furlong", Dimension::Length), UsageError);
  CHECK_THROWS_AS(units::parse("80 K", Dimension::Length), UsageError);
  CHECK_THROWS_AS(units::parse("abc", Dimension::Length), UsageError);
  CHECK_THROWS_AS(units::parse("", Dimension::Length), UsageError);
  for (auto d : {Dimension::Length, Dimension::Speed, Dimension::Angle, Dimension::C3}) {
    const auto syms = units::symbols(d);
    REQUIRE(!syms.empty());
    CHECK(units::factor(d, syms.front()) == 1.0);
  }
  CHECK(units::toAtomicMass(units::fromAtomicMass(514.54)) == doctest::Approx(514.54));
}

TEST_CASE("beamline validation") {
  Beamline b;
  b.L1 = 1.55;
  CHECK_THROWS_AS(b.validate(), DomainError);
  b.L2 = 0.59;
  CHECK_NOTHROW(b.validate());
  CHECK(b.totalLength() == doctest::Approx(2.14));
}
