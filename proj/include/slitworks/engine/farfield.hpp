#pragma once

#include <complex>
#include <vector>

#include "slitworks/engine/transmission.hpp"

namespace slitworks {

enum class FarFieldNorm {
  Peak,         ///< maximum of the returned array is 1
  Probability,  ///< density per metre of detector, integrates to sum |t|^2 dx over the full line
};

struct FarFieldResult {
  std::vector<double> intensity;
  bool undersampled = false;  ///< detector spacing coarser than half the finest fringe period lambda L2 / w
};

/// Fourier integral of t with the linearized phase k x xi / L2, cells integrated exactly.
FarFieldResult farField(const TransmissionFunction& t, double lambda, double L2, const std::vector<double>& xDetector,
                        FarFieldNorm norm = FarFieldNorm::Peak, unsigned threads = 0);

/// Complex amplitude integral F(q) = sum_j t_j int_cell exp(i q xi) d xi, for wavenumbers q.
std::vector<std::complex<double>> fourierIntegral(const TransmissionFunction& t, const std::vector<double>& q,
                                                  unsigned threads = 0);

}  // namespace slitworks
