// shared by the unit tests and the acceptance binary
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "slitworks/core/formulas.hpp"
#include "slitworks/detector/image.hpp"

namespace testsupport {

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

inline double maxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// y = c0 + c1 x + c2 x^2 by least squares, normal equations solved with Cramer's rule
inline std::array<double, 3> quadraticFit(const std::vector<double>& x, const std::vector<double>& y) {
  double s[5] = {0, 0, 0, 0, 0}, t[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * y[i];
      p *= x[i];
    }
  }
  const double M[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
  auto det = [](const double A[3][3]) {
    return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
           A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  };
  const double D = det(M);
  std::array<double, 3> c{};
  for (int j = 0; j < 3; ++j) {
    double A[3][3];
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) A[r][k] = k == j ? t[r] : M[r][k];
    c[j] = det(A) / D;
  }
  return c;
}

struct Locus {
  std::vector<double> x, y;
};

// Centroid of the +1 order in every row. The search window is centred on the order position
// expected from the row's speed label and is one period wide, so it never reaches orders 0 or 2.
inline Locus firstOrderLocus(const slitworks::DetectorImage& img, double mass, double L2, double d) {
  Locus out;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    const double v = img.heightVelocityMap[r];
    if (!(v > 0) || !(img.rowWeight[r] > 0)) continue;
    const double guess = L2 * slitworks::deBroglieWavelength(mass, v) / d;
    double m0 = 0, m1 = 0;
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const double x = img.xGrid[c];
      if (std::abs(x - guess) > guess / 2) continue;
      m0 += img.at(r, c);
      m1 += img.at(r, c) * x;
    }
    if (m0 <= 0) continue;
    out.x.push_back(m1 / m0);
    out.y.push_back(img.yGrid[r]);
  }
  return out;
}

}  // namespace testsupport
