#pragma once

#include <optional>
#include <string>

namespace slitworks {

struct Molecule {
  std::string name;
  double mass = 0;                         ///< kg
  std::optional<double> c3;                ///< J m^3
  std::optional<double> momentInertiaB;    ///< kg m^2
  std::optional<int> vibModeCount;
  std::optional<double> vibQuantum;        ///< J

  static Molecule fromAtomicMass(std::string name, double massU);
  /// Phthalocyanine, 514.54 u.
  static Molecule pcH2();
  void validate() const;
};

struct Beamline {
  double s1 = 0;              ///< source width [m]
  std::optional<double> s2;   ///< collimation slit width [m]
  double L1 = 0;              ///< source to grating [m]
  double L2 = 0;              ///< grating to detector [m]
  double latitude = 0;        ///< rad
  double sourceHeight = 0;    ///< m

  void validate() const;
  double totalLength() const { return L1 + L2; }
};

}  // namespace slitworks
