#include "slitworks/core/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "slitworks/errors.hpp"

namespace slitworks::units {
namespace {

using Table = std::vector<std::pair<std::string, double>>;

const Table& unitsFor(Dimension d) {
  using namespace constants;
  static const std::map<Dimension, Table> tables = {
      {Dimension::Dimensionless, {{"", 1.0}}},
      {Dimension::Length, {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6},
                           {"nm", 1e-9}, {"pm", 1e-12}, {"km", 1e3}}},
      {Dimension::Area, {{"m^2", 1.0}, {"cm^2", 1e-4}, {"mm^2", 1e-6}, {"um^2", 1e-12},
                         {"µm^2", 1e-12}, {"nm^2", 1e-18}}},
      {Dimension::Speed, {{"m/s", 1.0}, {"km/s", 1e3}, {"mm/s", 1e-3}, {"cm/s", 1e-2}}},
      {Dimension::Mass, {{"kg", 1.0}, {"u", u}, {"amu", u}, {"Da", u}, {"g", 1e-3}}},
      {Dimension::Temperature, {{"K", 1.0}}},
      {Dimension::Angle, {{"rad", 1.0}, {"deg", pi / 180}, {"°", pi / 180}, {"mrad", 1e-3},
                          {"urad", 1e-6}, {"µrad", 1e-6}}},
      {Dimension::Pressure, {{"Pa", 1.0}, {"hPa", 100.0}, {"mbar", 100.0}, {"bar", 1e5}, {"kPa", 1e3}}},
      {Dimension::Energy, {{"J", 1.0}, {"eV", eV}, {"meV", 1e-3 * eV}}},
      {Dimension::Time, {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6}, {"ns", 1e-9},
                         {"ps", 1e-12}, {"h", 3600.0}}},
      {Dimension::C3, {{"J m^3", 1.0}, {"meV nm^3", 1e-3 * eV * 1e-27}, {"eV nm^3", eV * 1e-27},
                       {"meV*nm^3", 1e-3 * eV * 1e-27}, {"eV*nm^3", eV * 1e-27}}},
      {Dimension::MomentOfInertia, {{"kg m^2", 1.0}, {"u nm^2", u * 1e-18}}},
  };
  return tables.at(d);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view name(Dimension d) {
  switch (d) {
    case Dimension::Dimensionless: return "dimensionless";
    case Dimension::Length: return "length";
    case Dimension::Area: return "area";
    case Dimension::Speed: return "speed";
    case Dimension::Mass: return "mass";
    case Dimension::Temperature: return "temperature";
    case Dimension::Angle: return "angle";
    case Dimension::Pressure: return "pressure";
    case Dimension::Energy: return "energy";
    case Dimension::Time: return "time";
    case Dimension::C3: return "C3 (energy x length^3)";
    case Dimension::MomentOfInertia: return "moment of inertia";
  }
  return "?";
}

double factor(Dimension d, std::string_view symbol) {
  for (const auto& [s, f] : unitsFor(d))
    if (s == symbol) return f;
  throw UsageError("unknown " + std::string(name(d)) + " unit '" + std::string(symbol) + "'");
}

std::vector<std::string> symbols(Dimension d) {
  std::vector<std::string> out;
  for (const auto& [s, f] : unitsFor(d)) out.push_back(s);
  return out;
}

double parse(std::string_view text, Dimension d) {
  text = trim(text);
  if (text.empty()) throw UsageError("empty quantity");
  double value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc()) throw UsageError("'" + std::string(text) + "' is not a number");
  std::string_view rest = trim(std::string_view(end, text.data() + text.size() - end));
  if (rest.empty()) return value;
  // collapse internal whitespace runs so "meV  nm^3" matches
  std::string unit;
  bool space = false;
  for (char c : rest) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !unit.empty()) unit += ' ';
    space = false;
    unit += c;
  }
  return value * factor(d, unit);
}

}  // namespace slitworks::units
