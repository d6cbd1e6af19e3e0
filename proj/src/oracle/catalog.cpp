// Printed answers of the worked problems, with the quote that anchors each value. Nothing in this
// file is used to compute a result; see compute.cpp.
#include "slitworks/core/constants.hpp"
#include "slitworks/oracle/oracle.hpp"

namespace slitworks::oracle {
namespace {

using constants::eV;
using constants::u;

constexpr double kDefaultTol = 0.02;

const double kMass = 514.54 * u;

std::vector<ProblemCase> build() {
  std::vector<ProblemCase> c;

  c.push_back({"P2.1", "de Broglie wavelength of PcH2 at 250 m/s", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"diameter", 1.5e-9, "m"}, {"red", 600e-9, "m"}},
               {{"lambda", 3.1e-12, "m", kDefaultTol, "lambda_dB=h/mv = 3.1x10^-12 m"},
                {"size_ratio", 480, "", kDefaultTol, "about 480 times smaller than the molecule itself"},
                {"light_ratio", 1.9e5, "", kDefaultTol, "about 1.9x10^5 times smaller than the wavelength of red light"}},
               ""});

  c.push_back({"P2.2", "first-order diffraction angle", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"d", 100e-9, "m"}},
               {{"theta", 3.1e-5, "rad", kDefaultTol, "theta_diff=lambda_dB/d ~ 3.1x10^-5 rad"}},
               ""});

  // The printed 30 um uses the angle rounded to 3e-5 rad; the unrounded angle gives 31 um.
  c.push_back({"P2.3b", "collimation slit for a point source", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"d", 100e-9, "m"}, {"L1", 1.0, "m"}},
               {{"s2_max", 30e-6, "m", 0.05, "This yields s_2< 30 um for the diffraction angle of problem 2.2"}},
               "printed bound rounded from 31 um"});

  // Inherits the rounding above: 31 um - 10 um = 21 um against the printed 20 um.
  c.push_back({"P2.3c", "collimation slit for a 10 um source", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"d", 100e-9, "m"}, {"L1", 1.0, "m"}, {"s1", 10e-6, "m"}},
               {{"s2_max", 20e-6, "m", 0.06, "For s_1=10 um the width of the collimation slit must be reduced to s_2< 20 um"}},
               "printed bound inherits the 30 um rounding"});

  c.push_back({"P2.4", "flux fraction through collimation slit and grating", CaseStatus::Assertable,
               {{"slit_height", 20e-6, "m"}, {"slit_width", 5e-6, "m"}, {"L1", 1.0, "m"}, {"transmissivity", 0.3, ""}},
               {{"fraction", 4.8e-12, "", kDefaultTol, "=4.8x10^-12"}},
               ""});

  // 2 L1 lambda / X_T = 41.3 um; the printed 43 um is flagged.
  c.push_back({"P2.5", "maximal source size for coherent illumination of two slits", CaseStatus::Assertable,
               {{"lambda", 3.1e-12, "m"}, {"L1", 1.0, "m"}, {"xT", 150e-9, "m"}},
               {{"s1_max", 43e-6, "m", 0.05, "we demand that s_1<43 um"}},
               "direct evaluation gives 41.3 um"});

  c.push_back({"P2.6", "longitudinal coherence in units of lambda", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"dv", 50, "m/s"}},
               {{"xL_over_lambda", 5, "", kDefaultTol, "lambda_dB v / Delta v=5 lambda_dB"}},
               ""});

  c.push_back({"P2.7", "single-slit width, quantum versus classical", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"s1", 1.4e-6, "m"}, {"s2", 70e-9, "m"},
                {"L1", 1.0, "m"}, {"L2", 1.0, "m"}},
               {{"quantum", 39.4e-6, "m", kDefaultTol, "=39.4 um"},
                {"classical", 2.9e-6, "m", kDefaultTol, "(s_1+s_2)/L_1 (L_1+L_2)=2.9 um"},
                // "about 13" is a rounded ratio
                {"ratio", 13, "", 0.05, "about 13 times wider than the pattern of a classical particle"}},
               ""});

  c.push_back({"P2.8", "missing orders at open fraction 0.5", CaseStatus::Assertable,
               {{"d", 100e-9, "m"}, {"s", 50e-9, "m"}, {"lambda", 3.1e-12, "m"}, {"slits", 10, ""}},
               {{"even_order_intensity", 0, "", 1e-12, "With d=2s, all even orders are suppressed.", true, true}},
               ""});

  c.push_back({"P2.9", "velocity selection and visible orders", CaseStatus::Qualitative, {}, {},
               "prose answer; band narrowing is modelled by the detector image"});

  c.push_back({"P2.10", "Coriolis shift at 45 degrees", CaseStatus::Assertable,
               {{"v", 250, "m/s"}, {"latitude", constants::pi / 4, "rad"}, {"L1", 1.0, "m"}, {"L2", 1.0, "m"}},
               {{"acceleration", 0.025, "m/s^2", kDefaultTol, "a_C=2 v Omega_E sin(theta_L)=0.025 m/s^2"},
                {"shift", 0.8e-6, "m", kDefaultTol, "Omega_E sin(theta_L)(L_1+L_2)^2/v ~ 0.8 um"}},
               ""});

  c.push_back({"P2.11", "molecules per hour from the laser evaporation source", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"surface_density", 8e-3, "kg/m^2"}, {"spot", 1e-6, "m"},
                {"slide_speed", 0.01, "m/s"}, {"duration", 3600, "s"}, {"slit_height", 20e-6, "m"},
                {"slit_width", 5e-6, "m"}, {"L1", 1.0, "m"}, {"transmissivity", 0.3, ""}},
               {{"area", 3.6e-5, "m^2", kDefaultTol, "A=D v t=3.6x10^-5 m^2"},
                {"evaporated", 3.37e17, "", kDefaultTol, "N_evap=rho_surf A N_A/m_PcH2=3.37x10^17"},
                {"contributing", 1.6e6, "", kDefaultTol, "N ~ 1.6x10^6 molecules in one hour"}},
               ""});

  c.push_back({"P2.12a", "thermal beam at 900 K", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"T", 900, "K"}},
               {{"v_mp", 171, "m/s", kDefaultTol, "v_mp = sqrt(2k_BT/m) ~ 171 m/s"},
                {"lambda", 4.5e-12, "m", kDefaultTol, "~ 4.5x10^-12 m"}},
               ""});

  c.push_back({"P2.12b", "thermal coherence length from the wavelength distribution", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"T", 900, "K"}},
               {{"xL_simple", 1, "", kDefaultTol, "Using Delta v ~ v_mp, we end up with X_L ~ lambda_dB"},
                {"peak_ratio", 0.6324555320336759, "", kDefaultTol, "lambda_max = sqrt(2/5) lambda_dB"},
                {"fwhm_ratio", 0.51, "", kDefaultTol, "Delta lambda ~ 0.51 lambda_dB"},
                {"xL_ratio", 0.78, "", kDefaultTol, "X_L ~ lambda^2_max / Delta lambda ~ 0.78 lambda_dB"}},
               ""});

  c.push_back({"A4.1", "narrowing the de Broglie spectrum", CaseStatus::Qualitative, {}, {}, "prose answer"});
  c.push_back({"A4.2", "parabolic interference lines under gravity", CaseStatus::Qualitative, {}, {},
               "symbolic answer; the order parabola is checked against rendered images"});

  c.push_back({"A4.3", "vibrational modes and internal energy", CaseStatus::Assertable,
               {{"atoms", 58, ""}, {"T", 600, "K"}, {"E_v", 0.1 * eV, "J"}},
               {{"modes", 168, "", kDefaultTol, "it has 168 vibrational degrees of freedom"},
                {"E_int_eV", 4.3, "eV", kDefaultTol, "E_int = 168 E_T ~ 4.3 eV"},
                {"occupation", 0.144, "", kDefaultTol, "n = exp(-E_v/k_B T) = 0.144"}},
               ""});

  c.push_back({"A4.4", "molecule rate and spacing in the beam", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"surface_density", 8e-3, "kg/m^2"}, {"spot", 1e-6, "m"},
                {"slide_speed", 0.01, "m/s"}, {"duration", 3600, "s"}, {"slit_height", 20e-6, "m"},
                {"slit_width", 5e-6, "m"}, {"L1", 1.0, "m"}, {"transmissivity", 0.3, ""}, {"v", 250, "m/s"}},
               {{"rate", 444, "1/s", kDefaultTol, "makes 444 molecules per second"},
                {"spacing", 0.56, "m", kDefaultTol, "the average distance between them is 0.56 m"}},
               "the indistinguishability discussion is prose"});

  c.push_back({"A4.5", "thermal decoherence", CaseStatus::Qualitative, {}, {}, "prose answer"});

  c.push_back({"A4.6", "rotational excitation at 600 K", CaseStatus::Assertable,
               {{"I_B", 9.46e-44, "kg m^2"}, {"I_C", 1.83e-43, "kg m^2"}, {"T", 600, "K"}},
               {{"B", 5.88e-26, "J", kDefaultTol, "A=B=5.88x10^-26 J"},
                {"J_mp", 265, "", kDefaultTol, "J_mp=sqrt(k_BT/2B)-1/2 ~ 265"},
                {"rot_frequency", 67e9, "Hz", kDefaultTol, "omega_rot=sqrt(2 k_BT/I_B)=2 pi 67 GHz"},
                {"E_rot", 8.28e-21, "J", kDefaultTol, "E_rot=k_BT=8.28x10^-21 J"},
                {"C", 3.04e-6, "J", kDefaultTol, "C=3.04x10^-6 J", false, false,
                 "exponent misprint: hbar^2/(2 I_C) = 3.04e-26 J"}},
               ""});

  c.push_back({"A4.7", "interaction with external fields", CaseStatus::Qualitative, {}, {}, "prose answer"});

  // The printed ratio divides by 2.4e-12 s although the transit time is stated as 4e-11 s just before.
  c.push_back({"A4.8", "grating transit time versus rotation period", CaseStatus::Assertable,
               {{"thickness", 10e-9, "m"}, {"v", 250, "m/s"}, {"I_B", 9.46e-44, "kg m^2"}, {"T", 600, "K"}},
               {{"transit", 4e-11, "s", 0.05, "The transit time for v=250 m/s through a 10 nm thick grating is 4x10^-11 s"},
                {"rotation_period", 1.5e-11, "s", 0.05, "t_rot/t_trans=1.5x10^-11/2.4x10^-12"},
                {"ratio", 6, "", 0.05, "t_rot/t_trans=1.5x10^-11/2.4x10^-12 ~ 6", false, false,
                 "inconsistent with the stated transit time of 4e-11 s"}},
               ""});

  c.push_back({"A4.9", "distance travelled per rotation", CaseStatus::Assertable,
               {{"mass", kMass, "kg"}, {"v", 250, "m/s"}, {"I_B", 9.46e-44, "kg m^2"}, {"T", 600, "K"}},
               {{"distance", 3.75e-9, "m", kDefaultTol, "2 pi/omega_rot v = 3.75 nm"},
                {"over_lambda", 1200, "", kDefaultTol, "~ 1200 times longer than lambda_dB"}},
               "the which-path argument is prose"});
  return c;
}

}  // namespace

const std::vector<ProblemCase>& listProblems() {
  static const std::vector<ProblemCase> catalog = build();
  return catalog;
}

}  // namespace slitworks::oracle
