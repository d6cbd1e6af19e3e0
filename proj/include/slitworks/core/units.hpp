#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace slitworks::units {

enum class Dimension {
  Dimensionless,
  Length,
  Area,
  Speed,
  Mass,
  Temperature,
  Angle,
  Pressure,
  Energy,
  Time,
  C3,  // energy x length^3
  MomentOfInertia,
};

std::string_view name(Dimension d);

/// SI value of one unit `symbol` of dimension `d`; throws UsageError for unknown symbols.
double factor(Dimension d, std::string_view symbol);

/// Accepted unit spellings for `d`, first entry is the SI unit.
std::vector<std::string> symbols(Dimension d);

/// Parses "80 nm", "1.2e-3", "40 deg", "10 meV nm^3" into SI. A bare number is taken as SI.
double parse(std::string_view text, Dimension d);

inline double fromAtomicMass(double massU);
inline double toAtomicMass(double massKg);

}  // namespace slitworks::units

#include "slitworks/core/constants.hpp"

namespace slitworks::units {
inline double fromAtomicMass(double massU) { return massU * constants::u; }
inline double toAtomicMass(double massKg) { return massKg / constants::u; }
}  // namespace slitworks::units
