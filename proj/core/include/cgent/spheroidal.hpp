#pragma once

#include <vector>

#include "cgent/mathieu.hpp"

namespace cgent {

// Lowest even prolate spheroidal eigenfunction of order zero,
//   (1 - eta^2) S'' - 2 eta S' + (lambda - c^2 eta^2) S = 0,
// expanded as S00(c, eta) = sum_k d[k] P_{2k}(eta), normalized to unit L2
// norm on [-1, 1] with d[0] > 0.
struct SpheroidalCharacteristic {
  double c;
  double lambda;
  std::vector<double> d;

  // S00(c, eta) for |eta| <= 1.
  double angular(double eta) const;
};

SpheroidalCharacteristic spheroidal_characteristic(double c, const SpectralOptions& opts = {});

// Prolate radial function of the first kind R00^(1)(c, xi), normalized so
// that R00(c, xi) -> j0(c xi) as c -> 0 and lambda_0(c) = (2c/pi) R00(c, 1)^2
// is the largest eigenvalue of the time/band-limiting operator. This is the
// R00(gamma/8, 1) in the coarse-grained entropic bound.
double radial_r00(double c, double xi, const SpectralOptions& opts = {});

// Spherical Bessel functions j_0 .. j_max_order at x >= 0.
std::vector<double> spherical_bessel_j(int max_order, double x);

}  // namespace cgent
