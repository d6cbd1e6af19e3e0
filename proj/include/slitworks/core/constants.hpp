#pragma once

#include <numbers>
#include <string>
#include <vector>

/// Physical constants, CODATA-2018 exact/recommended values, SI units.
namespace slitworks::constants {

inline constexpr double pi = std::numbers::pi;

/// Planck constant [J s]
inline constexpr double h = 6.62607015e-34;
/// Reduced Planck constant [J s]
inline constexpr double hbar = h / (2.0 * pi);
/// Boltzmann constant [J/K]
inline constexpr double kB = 1.380649e-23;
/// Atomic mass unit [kg]
inline constexpr double u = 1.66053906660e-27;
/// Avogadro constant [1/mol]
inline constexpr double NA = 6.02214076e23;
/// Elementary charge, i.e. one electronvolt in joule
inline constexpr double eV = 1.602176634e-19;
/// Gravitational acceleration [m/s^2]; not given by the source material, standard value.
inline constexpr double g = 9.81;
/// Earth rotation rate [rad/s], rounded as in the worked problems.
inline constexpr double omegaE = 7.2e-5;

inline constexpr const char* version = "CODATA-2018;g=9.81;omegaE=7.2e-5";

struct Entry {
  std::string symbol;
  double value;
  std::string unit;
  std::string description;
};

std::vector<Entry> table();

/// Whitespace separated `symbol value unit # description` lines.
std::string tableText();

}  // namespace slitworks::constants
