#pragma once

#include <optional>

namespace slitworks {

struct Mask {
  int slitCount = 1;
  double period = 0;      ///< d [m]; ignored for a single slit except as spacing reference
  double slitWidth = 0;   ///< s [m]
  double thickness = 0;   ///< T [m]
  double rotation = 0;    ///< rad about the slit axis
  std::optional<double> totalWidth;  ///< illuminated width, default N d

  void validate() const;
  double width() const;
};

struct EffectiveGeometry {
  double dEff;     ///< d cos(theta)
  double sEffGeo;  ///< projected open window s cos(theta) - T sin|theta|
};

/// Throws OpaqueAtAngleError when the projected window closes.
EffectiveGeometry effectiveGeometry(const Mask& mask);

enum class PhaseModel {
  Eikonal,    ///< wall terms C3/dist^3 summed over both walls, integrated through the wall depth
  AsPrinted,  ///< literal transcription of the printed expression, kept for comparison only
};

struct VdwParams {
  double c3 = 0;              ///< J m^3
  double cutoffDistance = 0;  ///< m, molecules closer to a wall than this are lost
  bool enabled = false;
  PhaseModel model = PhaseModel::Eikonal;

  void validate(const Mask& mask) const;
};

/// Phase imprinted at transverse position x (lab frame, from the centre of the projected window).
/// Returns nullopt inside the cutoff band next to a wall.
std::optional<double> vdwPhase(double x, const Mask& mask, const VdwParams& vdw, double v);

}  // namespace slitworks
