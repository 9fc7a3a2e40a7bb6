#pragma once

#include <vector>

namespace cgent {

inline constexpr double kMaxSpectralParameter = 1e4;
inline constexpr int kMaxSpectralTerms = 2048;

struct SpectralOptions {
  double max_parameter = kMaxSpectralParameter;
  int max_terms = kMaxSpectralTerms;
  double tolerance = 1e-13;
};

// Lowest characteristic value a0(q) of y'' + (a - 2q cos 2x) y = 0 and the
// Fourier coefficients A_{2k} of ce0(x) = sum_k A_{2k} cos(2kx), normalized
// with 2 A_0^2 + sum_{k>=1} A_{2k}^2 = 1 and A_0 > 0.
struct MathieuCharacteristic {
  double q;
  double a0;
  std::vector<double> coefficients;
};

// Throws InvalidParameter for q < 0 or q > max_parameter and ConvergenceError
// if a0 has not settled at max_terms coefficients.
MathieuCharacteristic characteristic_a0(double q, const SpectralOptions& opts = {});

}  // namespace cgent
