#include "slitworks/core/constants.hpp"

#include <cstdio>

namespace slitworks::constants {

std::vector<Entry> table() {
  return {
      {"h", h, "J s", "Planck constant"},
      {"hbar", hbar, "J s", "reduced Planck constant h/(2 pi)"},
      {"kB", kB, "J/K", "Boltzmann constant"},
      {"u", u, "kg", "atomic mass unit"},
      {"NA", NA, "1/mol", "Avogadro constant"},
      {"eV", eV, "J", "electronvolt"},
      {"g", g, "m/s^2", "gravitational acceleration"},
      {"omegaE", omegaE, "rad/s", "Earth rotation rate"},
  };
}

std::string tableText() {
  std::string out = "# slitworks constants (" + std::string(version) + ")\n# symbol value unit # description\n";
  char buf[96];
  for (const auto& e : table()) {
    std::snprintf(buf, sizeof buf, "%.12e", e.value);
    out += e.symbol + " " + buf + " " + e.unit + " # " + e.description + "\n";
  }
  return out;
}

}  // namespace slitworks::constants
