// detector-sim: free fall, Coriolis, velocity selection, image rendering, arrivals
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>

#include "doctest.h"
#include "slitworks/core/constants.hpp"
#include "slitworks/core/distributions.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/detector/arrivals.hpp"
#include "slitworks/detector/freefall.hpp"
#include "slitworks/detector/image.hpp"
#include "slitworks/engine/envelope.hpp"
#include "slitworks/errors.hpp"
#include "support/helpers.hpp"

using namespace slitworks;
using constants::pi;

namespace {

const double kMass = 514.54 * constants::u;

Beamline beamline() {
  Beamline b;
  b.s1 = 1.7e-6;
  b.L1 = 1.55;
  b.L2 = 0.59;
  b.latitude = 48.2 * pi / 180;
  return b;
}

Mask grating(int n, double d, double s) {
  Mask m;
  m.slitCount = n;
  m.period = d;
  m.slitWidth = s;
  return m;
}

DetectorGrid grid(double x0, double x1, int nx, double y0, double y1, int ny) {
  DetectorGrid g;
  g.xMin = x0;
  g.xMax = x1;
  g.nx = nx;
  g.yMin = y0;
  g.yMax = y1;
  g.ny = ny;
  return g;
}

RenderOptions postGrating() {
  RenderOptions o;
  o.collimation = false;
  o.heightMapping = HeightMapping::PostGratingFall;
  return o;
}

// one row at the height a molecule of speed v falls to behind the grating
DetectorImage singleSpeedRow(const Mask& m, double v, double halfWidth, int nx, RenderOptions o = postGrating()) {
  const double H = fallHeight(v, 0.59);
  return renderImage(beamline(), kMass, m, VdwParams{}, VelocityDistribution::delta(v),
                     grid(-halfWidth, halfWidth, nx, -H - 1e-6, -H + 1e-6, 1), o);
}

std::vector<double> row(const DetectorImage& img, std::size_t r) {
  return {img.intensity.begin() + static_cast<long>(r * img.cols()),
          img.intensity.begin() + static_cast<long>((r + 1) * img.cols())};
}

}  // namespace

TEST_CASE("fall height") {
  CHECK(fallHeight(250, 2.14) == doctest::Approx(9.81 * 2.14 * 2.14 / (2 * 250.0 * 250.0)));
  CHECK(fallHeight(100, 1) / fallHeight(200, 1) == doctest::Approx(4.0));
  for (double v = 30; v < 3000; v *= 1.21) {
    CHECK(heightToVelocity(fallHeight(v, 0.59), 0.59) == doctest::Approx(v).epsilon(1e-14));
    CHECK(heightToVelocity(fallHeight(v, 0.59) * 1.01, 0.59) < v);
  }
  CHECK_THROWS_AS(fallHeight(0, 1), DomainError);
  CHECK_THROWS_AS(heightToVelocity(0, 1), DomainError);
}

TEST_CASE("Coriolis drift") {
  const double lat = 48.2 * pi / 180;
  CHECK(coriolisShift(250, lat, 2.14) == doctest::Approx(7.2e-5 * std::sin(lat) * 2.14 * 2.14 / 250));
  CHECK(coriolisShift(250, 0, 2.14) == 0.0);
  CHECK(coriolisShift(500, lat, 2.14) == doctest::Approx(coriolisShift(250, lat, 2.14) / 2));
  // integrating a = 2 v Omega sin(phi) over the flight time L / v gives half of a t^2 = Omega sin(phi) L^2 / v
  const double t = 2.14 / 250;
  CHECK(0.5 * coriolisAcceleration(250, lat) * t * t == doctest::Approx(coriolisShift(250, lat, 2.14)));
}

TEST_CASE("order parabola identity") {
  const double d = 100e-9;
  for (double v : {100.0, 250.0, 400.0}) {
    const double X = 0.59 * deBroglieWavelength(kMass, v) / d;
    CHECK(diffractionOrderParabola(1, kMass, d, X) == doctest::Approx(-fallHeight(v, 0.59)).epsilon(1e-12));
    CHECK(diffractionOrderParabola(2, kMass, d, 2 * X) == doctest::Approx(-fallHeight(v, 0.59)).epsilon(1e-12));
  }
  CHECK(diffractionOrderParabola(1, kMass, d, 0) == 0.0);
  CHECK_THROWS_AS(diffractionOrderParabola(0, kMass, d, 1e-6), DomainError);
  CHECK(classicalShadowWidth(1e-6, 2e-6, 1, 1) == doctest::Approx(6e-6));
}

TEST_CASE("selector band edges lie on parabolas through the opening edges") {
  const auto b = beamline();
  VelocitySelector sel{0.0, 20e-6, 1.45};
  const double L = b.totalLength();
  for (double yD : {-0.1e-3, -0.25e-3, -0.5e-3}) {
    const auto band = velocityBandAtHeight(b, sel, yD);
    REQUIRE_FALSE(band.empty());
    // straight-line chord plus the sag of free fall, built from scratch
    auto yAtSelector = [&](double v) {
      const double slope = (yD + 9.81 * L * L / (2 * v * v)) / L;
      return slope * sel.distanceFromSource - 9.81 * sel.distanceFromSource * sel.distanceFromSource / (2 * v * v);
    };
    CHECK(yAtSelector(band.vMin) == doctest::Approx(sel.height + sel.opening / 2).epsilon(1e-9));
    CHECK(yAtSelector(band.vMax) == doctest::Approx(sel.height - sel.opening / 2).epsilon(1e-9));
    const double mid = 0.5 * (band.vMin + band.vMax);
    CHECK(std::abs(yAtSelector(mid) - sel.height) < sel.opening / 2);
    CHECK(selectorCentreVelocity(b, sel, yD) > band.vMin);
    CHECK(selectorCentreVelocity(b, sel, yD) < band.vMax);
  }
}

TEST_CASE("velocity bands widen with the opening and move with height") {
  const auto b = beamline();
  VelocityBand prev{0, 0};
  for (double o : {0.0, 5e-6, 10e-6, 20e-6, 40e-6}) {
    const auto band = velocityBandAtHeight(b, {0.0, o, 1.45}, -0.2e-3);
    if (o > 0) {
      CHECK(band.vMin <= prev.vMin);
      CHECK(band.vMax >= prev.vMax);
    }
    prev = band;
  }
  const auto zero = velocityBandAtHeight(b, {0.0, 0.0, 1.45}, -0.2e-3);
  CHECK(zero.vMin == doctest::Approx(zero.vMax));
  double last = INFINITY;
  for (double y = -0.05e-3; y > -0.6e-3; y -= 0.05e-3) {
    const double v = selectorCentreVelocity(b, {0.0, 10e-6, 1.45}, y);
    CHECK(v < last);
    last = v;
  }
  CHECK(std::isnan(selectorCentreVelocity(b, {0.0, 10e-6, 1.45}, 1e-3)));
  CHECK(velocityBandAtHeight(b, {0.0, 10e-6, 1.45}, 1e-3).empty());
  CHECK_THROWS_AS(velocityBandAtHeight(b, {0.0, 10e-6, 3.0}, -1e-4), DomainError);
}

TEST_CASE("rows integrate to their band probability") {
  const auto dist = VelocityDistribution::fluxWeighted(900, kMass);
  RenderOptions o;
  o.selector = {0.0, 10e-6, 1.45};
  const auto img = renderImage(beamline(), kMass, grating(3, 100e-9, 80e-9), VdwParams{}, dist,
                               grid(-200e-6, 200e-6, 400, -0.37e-3, -0.04e-3, 30), o);
  const double dx = img.xGrid[1] - img.xGrid[0];
  for (std::size_t r = 0; r < img.rows(); ++r) {
    double s = 0;
    for (std::size_t c = 0; c < img.cols(); ++c) s += img.at(r, c) * dx;
    CHECK(s == doctest::Approx(img.rowWeight[r]).epsilon(1e-6));
    CHECK(img.rowWeight[r] == doctest::Approx(probabilityInBand(dist, img.bandMin[r], img.bandMax[r])));
  }
  // slower molecules land lower
  for (std::size_t r = 1; r < img.rows(); ++r) CHECK(img.heightVelocityMap[r] < img.heightVelocityMap[r - 1]);
}

TEST_CASE("rendering is deterministic and independent of the thread count") {
  const auto dist = VelocityDistribution::fluxWeighted(900, kMass);
  RenderOptions o;
  o.selector = {0.0, 10e-6, 1.45};
  const auto g = grid(-100e-6, 100e-6, 200, -0.3e-3, -0.1e-3, 12);
  o.threads = 1;
  const auto a = renderImage(beamline(), kMass, grating(2, 100e-9, 80e-9), VdwParams{}, dist, g, o);
  o.threads = 3;
  const auto b = renderImage(beamline(), kMass, grating(2, 100e-9, 80e-9), VdwParams{}, dist, g, o);
  CHECK(a.intensity == b.intensity);
  CHECK(a.heightVelocityMap == b.heightVelocityMap);
}

TEST_CASE("Coriolis drift is a rigid shift of each row") {
  const double v = 250, lat = beamline().latitude, shift = coriolisShift(v, lat, 2.14);
  auto o = postGrating();
  o.coriolis = true;
  const auto m = grating(10, 100e-9, 50e-9);
  const auto with = singleSpeedRow(m, v, 100e-6, 1000, o);
  // same row without the drift, rendered on a grid moved back by the drift
  const double H = fallHeight(v, 0.59);
  const auto without = renderImage(beamline(), kMass, m, VdwParams{}, VelocityDistribution::delta(v),
                                   grid(-100e-6 - shift, 100e-6 - shift, 1000, -H - 1e-6, -H + 1e-6, 1), postGrating());
  const double peak = *std::max_element(with.intensity.begin(), with.intensity.end());
  double ratio = 0;
  for (std::size_t c = 0; c < with.cols(); ++c)
    if (with.intensity[c] > 1e-3 * peak) {
      const double q = with.intensity[c] / without.intensity[c];
      if (ratio == 0) ratio = q;
      CHECK(q == doctest::Approx(ratio).epsilon(1e-9));
    }
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(shift == doctest::Approx(9.8e-7).epsilon(0.02));
}

TEST_CASE("single slit row width") {
  const double v = 145, lambda = deBroglieWavelength(kMass, v);
  const auto img = singleSpeedRow(grating(1, 0, 80e-9), v, 150e-6, 3001);
  CHECK(traceFwhm(img.xGrid, row(img, 0)) == doctest::Approx(widthAtDetector(lambda, 0.59, 80e-9)).epsilon(0.01));
}

TEST_CASE("double slit zeroth order width") {
  const double v = 145, lambda = deBroglieWavelength(kMass, v), L2 = 0.59, d = 100e-9, s = 80e-9;
  const auto img = singleSpeedRow(grating(2, d, s), v, 60e-6, 4801);
  // half-maximum crossing of cos^2 sinc^2 found by root bracketing
  auto I = [&](double x) {
    const double b = pi * s * x / (lambda * L2), a = pi * d * x / (lambda * L2);
    const double sinc = b == 0 ? 1 : std::sin(b) / b;
    return sinc * sinc * std::cos(a) * std::cos(a) - 0.5;
  };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 100;
  const auto r = boost::math::tools::toms748_solve(I, 0.0, lambda * L2 / (2 * d), tol, it);
  CHECK(traceFwhm(img.xGrid, row(img, 0)) == doctest::Approx(r.first + r.second).epsilon(0.005));
}

TEST_CASE("first-order locus follows the printed parabola") {
  const auto m = grating(10, 100e-9, 50e-9);
  const auto dist = VelocityDistribution::uniformBand(50, 800);
  const auto g = grid(-150e-6, 150e-6, 3000, -0.5e-3, -0.02e-3, 40);
  const double coeff = diffractionOrderParabola(1, kMass, 100e-9, 1.0);

  const auto post = renderImage(beamline(), kMass, m, VdwParams{}, dist, g, postGrating());
  const auto a = testsupport::firstOrderLocus(post, kMass, 0.59, 100e-9);
  REQUIRE(a.x.size() >= 30);
  CHECK(testsupport::quadraticFit(a.x, a.y)[2] == doctest::Approx(coeff).epsilon(0.05));

  // with the selector at the grating the whole flight bends the beam: a factor L / L2 steeper
  RenderOptions o;
  o.collimation = false;
  o.selector = {0.0, 0.0, 1.55};
  const auto full = renderImage(beamline(), kMass, m, VdwParams{}, dist, g, o);
  const auto b = testsupport::firstOrderLocus(full, kMass, 0.59, 100e-9);
  REQUIRE(b.x.size() >= 30);
  CHECK(testsupport::quadraticFit(b.x, b.y)[2] == doctest::Approx(coeff * 2.14 / 0.59).epsilon(0.05));
}

TEST_CASE("trace extraction") {
  const auto dist = VelocityDistribution::fluxWeighted(900, kMass);
  RenderOptions o;
  o.selector = {0.0, 10e-6, 1.45};
  const auto img = renderImage(beamline(), kMass, grating(3, 100e-9, 80e-9), VdwParams{}, dist,
                               grid(-200e-6, 200e-6, 400, -0.37e-3, -0.04e-3, 60), o);
  int expect = 0;
  for (double v : img.heightVelocityMap) expect += v >= 140 && v <= 150;
  const auto t = extractTrace(img, 140, 150);
  CHECK(t.rows == expect);
  CHECK(t.rows > 0);
  const auto all = extractTrace(img, 0, INFINITY);
  CHECK(all.rows == static_cast<int>(img.rows()));
  // smoothing keeps the integral
  const auto sm = extractTrace(img, 140, 150, 1 / 12.5e-6);
  double a = 0, b = 0;
  for (std::size_t i = 0; i < t.intensity.size(); ++i) {
    a += t.intensity[i];
    b += sm.intensity[i];
  }
  CHECK(b == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("arrivals are reproducible") {
  const auto img = singleSpeedRow(grating(3, 100e-9, 80e-9), 145, 100e-6, 200);
  const auto a = sampleArrivals(img, 5000, 42);
  const auto b = sampleArrivals(img, 5000, 42);
  const auto c = sampleArrivals(img, 5000, 43);
  REQUIRE(a.size() == 5000);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a[i].x == b[i].x && a[i].y == b[i].y && a[i].id == b[i].id;
    differs = differs || a[i].x != c[i].x;
  }
  CHECK(same);
  CHECK(differs);
  CHECK(sampleArrivals(img, 0, 1).empty());
  auto blank = img;
  std::fill(blank.intensity.begin(), blank.intensity.end(), 0.0);
  CHECK_THROWS_AS(sampleArrivals(blank, 10, 1), DomainError);
  const auto dots = renderDots(a, img, 0.4e-6);
  double mass = 0;
  for (double x : dots) mass += x;
  CHECK(mass == doctest::Approx(5000).epsilon(0.01));
}

TEST_CASE("arrival histogram passes a chi-square test") {
  const auto dist = VelocityDistribution::fluxWeighted(900, kMass);
  RenderOptions o;
  o.selector = {0.0, 10e-6, 1.45};
  const auto img = renderImage(beamline(), kMass, grating(3, 100e-9, 80e-9), VdwParams{}, dist,
                               grid(-200e-6, 200e-6, 200, -0.37e-3, -0.04e-3, 20), o);
  const std::size_t n = 1'000'000;
  const auto ev = sampleArrivals(img, n, 7);
  // 10 x 4 pixel blocks
  const double dx = img.xGrid[1] - img.xGrid[0], dy = img.yGrid[0] - img.yGrid[1];
  const double x0 = img.xGrid[0] - dx / 2, yTop = img.yGrid[0] + dy / 2;
  std::map<std::pair<long, long>, double> expected, observed;
  double total = 0;
  for (std::size_t r = 0; r < img.rows(); ++r)
    for (std::size_t c = 0; c < img.cols(); ++c) {
      expected[{static_cast<long>(r / 4), static_cast<long>(c / 10)}] += img.at(r, c);
      total += img.at(r, c);
    }
  for (const auto& e : ev)
    observed[{static_cast<long>(std::floor((yTop - e.y) / dy)) / 4, static_cast<long>(std::floor((e.x - x0) / dx)) / 10}] += 1;
  double chi2 = 0;
  int bins = 0;
  for (auto& [k, w] : expected) {
    const double E = w / total * n;
    if (E < 5) continue;
    chi2 += std::pow(observed[k] - E, 2) / E;
    ++bins;
  }
  const double dof = bins - 1;
  CAPTURE(chi2);
  CAPTURE(dof);
  CHECK(std::abs(chi2 - dof) < 5 * std::sqrt(2 * dof));
}
