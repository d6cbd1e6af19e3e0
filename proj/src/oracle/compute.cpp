// Compute paths for the worked problems. Every number here comes from the case inputs or from
// physical constants; expected answers live in catalog.cpp only.
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "slitworks/core/constants.hpp"
#include "slitworks/core/distributions.hpp"
#include "slitworks/core/formulas.hpp"
#include "slitworks/detector/freefall.hpp"
#include "slitworks/engine/fraunhofer.hpp"
#include "slitworks/engine/mask.hpp"
#include "slitworks/errors.hpp"
#include "slitworks/oracle/oracle.hpp"

namespace slitworks::oracle {

int vibrationalModeCount(int atoms) {
  if (atoms < 3) throw DomainError("a non-linear molecule needs at least 3 atoms");
  return 3 * atoms - 6;
}

double boltzmannOccupation(double energy, double T) {
  if (!(T > 0)) throw DomainError("temperature must be positive");
  return std::exp(-energy / (constants::kB * T));
}

double rotationalConstant(double I) {
  if (!(I > 0)) throw DomainError("moment of inertia must be positive");
  return constants::hbar * constants::hbar / (2 * I);
}

// maximum of (2J+1) exp(-B J(J+1)/kT)
double mostProbableRotationalQuantumNumber(double B, double T) {
  return std::sqrt(constants::kB * T / (2 * B)) - 0.5;
}

double rotationalAngularFrequency(double I, double T) {
  if (!(I > 0) || !(T > 0)) throw DomainError("moment of inertia and temperature must be positive");
  return std::sqrt(2 * constants::kB * T / I);
}

double transitTime(double thickness, double v) {
  if (!(v > 0)) throw DomainError("speed must be positive");
  return thickness / v;
}

double evaporatedMolecules(double surfaceDensity, double area, double moleculeMass) {
  return surfaceDensity * area / moleculeMass;
}

namespace {

using Out = std::map<std::string, double>;

double contributingPerHour(const Inputs& in) {
  const double area = in("spot") * in("slide_speed") * in("duration");
  const double n = evaporatedMolecules(in("surface_density"), area, in("mass"));
  return n * collimatedFraction(in("slit_height") * in("slit_width"), in("L1"), in("transmissivity"));
}

// wavelength density obtained by transforming the flux-weighted speed density
struct ThermalWavelength {
  VelocityDistribution dist;
  double mass;
  double operator()(double lambda) const {
    const double v = speedForWavelength(mass, lambda);
    return velocityPdf(dist, v) * v / lambda;  // |dv/dlambda| = h/(m lambda^2) = v/lambda
  }
};

Out thermalCoherence(const Inputs& in) {
  const double m = in("mass"), T = in("T");
  const double vMp = thermalStats(T, m).vMp;
  const double l0 = deBroglieWavelength(m, vMp);
  const ThermalWavelength f{VelocityDistribution::fluxWeighted(T, m), m};

  auto neg = [&](double r) { return -f(r * l0); };
  const auto [rPeak, fNeg] = boost::math::tools::brent_find_minima(neg, 0.2, 2.0, 52);
  const double half = -fNeg / 2;

  auto g = [&](double r) { return f(r * l0) - half; };
  auto tol = boost::math::tools::eps_tolerance<double>(48);
  std::uintmax_t it = 200;
  const auto lo = boost::math::tools::toms748_solve(g, 0.05, rPeak, tol, it);
  it = 200;
  const auto hi = boost::math::tools::toms748_solve(g, rPeak, 10.0, tol, it);
  const double fwhm = (hi.first + hi.second) / 2 - (lo.first + lo.second) / 2;

  return {{"xL_simple", longitudinalCoherenceLength(l0, vMp, vMp, LongitudinalConvention::Fwhm) / l0},
          {"peak_ratio", rPeak},
          {"fwhm_ratio", fwhm},
          {"xL_ratio", rPeak * rPeak / fwhm}};
}

std::map<std::string, ComputeFn> registry() {
  std::map<std::string, ComputeFn> r;

  r["P2.1"] = [](const Inputs& in) -> Out {
    const double l = deBroglieWavelength(in("mass"), in("v"));
    return {{"lambda", l}, {"size_ratio", in("diameter") / l}, {"light_ratio", in("red") / l}};
  };

  r["P2.2"] = [](const Inputs& in) -> Out {
    return {{"theta", deBroglieWavelength(in("mass"), in("v")) / in("d")}};
  };

  // collimation angle (s1 + s2)/L1 must stay below the first-order angle
  r["P2.3b"] = [](const Inputs& in) -> Out {
    const double theta = deBroglieWavelength(in("mass"), in("v")) / in("d");
    return {{"s2_max", theta * in("L1")}};
  };
  r["P2.3c"] = [](const Inputs& in) -> Out {
    const double theta = deBroglieWavelength(in("mass"), in("v")) / in("d");
    return {{"s2_max", theta * in("L1") - in("s1")}};
  };

  r["P2.4"] = [](const Inputs& in) -> Out {
    return {{"fraction", collimatedFraction(in("slit_height") * in("slit_width"), in("L1"), in("transmissivity"))}};
  };

  r["P2.5"] = [](const Inputs& in) -> Out {
    return {{"s1_max", sourceWidthForCoherence(in("L1"), in("lambda"), in("xT"), CoherenceConvention::FirstZeros)}};
  };

  r["P2.6"] = [](const Inputs& in) -> Out {
    const double l = deBroglieWavelength(in("mass"), in("v"));
    return {{"xL_over_lambda", longitudinalCoherenceLength(l, in("v"), in("dv"), LongitudinalConvention::Fwhm) / l}};
  };

  r["P2.7"] = [](const Inputs& in) -> Out {
    const double q = widthAtDetector(deBroglieWavelength(in("mass"), in("v")), in("L2"), in("s2"));
    const double c = classicalShadowWidth(in("s1"), in("s2"), in("L1"), in("L2"));
    return {{"quantum", q}, {"classical", c}, {"ratio", q / c}};
  };

  // largest relative intensity among orders 2, 4, 6 of the far-field grating pattern
  r["P2.8"] = [](const Inputs& in) -> Out {
    Mask m;
    m.slitCount = static_cast<int>(in("slits"));
    m.period = in("d");
    m.slitWidth = in("s");
    const double l = in("lambda");
    std::vector<double> angles;
    for (int n : {2, 4, 6}) angles.push_back(std::asin(n * l / m.period));
    const auto I = fraunhoferIntensity(m, l, angles);
    double worst = 0;
    for (double v : I) worst = std::max(worst, v);
    return {{"even_order_intensity", worst}};
  };

  r["P2.10"] = [](const Inputs& in) -> Out {
    return {{"acceleration", coriolisAcceleration(in("v"), in("latitude"))},
            {"shift", coriolisShift(in("v"), in("latitude"), in("L1") + in("L2"))}};
  };

  r["P2.11"] = [](const Inputs& in) -> Out {
    const double area = in("spot") * in("slide_speed") * in("duration");
    return {{"area", area},
            {"evaporated", evaporatedMolecules(in("surface_density"), area, in("mass"))},
            {"contributing", contributingPerHour(in)}};
  };

  r["P2.12a"] = [](const Inputs& in) -> Out {
    const double v = thermalStats(in("T"), in("mass")).vMp;
    return {{"v_mp", v}, {"lambda", deBroglieWavelength(in("mass"), v)}};
  };

  r["P2.12b"] = thermalCoherence;

  r["A4.3"] = [](const Inputs& in) -> Out {
    const int modes = vibrationalModeCount(static_cast<int>(in("atoms")));
    const double perMode = constants::kB * in("T") / 2;
    return {{"modes", modes},
            {"E_int_eV", modes * perMode / constants::eV},
            {"occupation", boltzmannOccupation(in("E_v"), in("T"))}};
  };

  r["A4.4"] = [](const Inputs& in) -> Out {
    const double rate = contributingPerHour(in) / in("duration");
    return {{"rate", rate}, {"spacing", in("v") / rate}};
  };

  r["A4.6"] = [](const Inputs& in) -> Out {
    const double B = rotationalConstant(in("I_B"));
    return {{"B", B},
            {"J_mp", mostProbableRotationalQuantumNumber(B, in("T"))},
            {"rot_frequency", rotationalAngularFrequency(in("I_B"), in("T")) / (2 * constants::pi)},
            {"E_rot", constants::kB * in("T")},
            {"C", rotationalConstant(in("I_C"))}};
  };

  r["A4.8"] = [](const Inputs& in) -> Out {
    const double tt = transitTime(in("thickness"), in("v"));
    const double tr = 2 * constants::pi / rotationalAngularFrequency(in("I_B"), in("T"));
    return {{"transit", tt}, {"rotation_period", tr}, {"ratio", tr / tt}};
  };

  r["A4.9"] = [](const Inputs& in) -> Out {
    const double tr = 2 * constants::pi / rotationalAngularFrequency(in("I_B"), in("T"));
    const double dist = tr * in("v");
    return {{"distance", dist}, {"over_lambda", dist / deBroglieWavelength(in("mass"), in("v"))}};
  };
  return r;
}

}  // namespace

const ComputeFn& computeFor(const std::string& id) {
  static const auto table = registry();
  const auto it = table.find(id);
  if (it == table.end()) throw UsageError("no compute path for problem '" + id + "'");
  return it->second;
}

}  // namespace slitworks::oracle
