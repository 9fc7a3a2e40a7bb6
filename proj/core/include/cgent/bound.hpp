#pragma once

#include <numbers>
#include <vector>

namespace cgent {

// 1/(2 e pi): the bound for fine bins, where -ln C = ln(2 pi e).
inline constexpr double kFineBinBound = 1.0 / (2.0 * std::numbers::e * std::numbers::pi);

// C(gamma) = min{ 1/(2 e pi), R00(gamma/8, 1)^2 / (4 pi) } for the product
// gamma = Delta * delta of position and momentum bin widths (hbar = 1).
// Throws InvalidParameter for gamma < 0 and propagates ConvergenceError.
double coarse_bound_c(double gamma);

// The second branch alone, R00(gamma/8, 1)^2 / (4 pi).
double spheroidal_branch(double gamma);

// Unique gamma where the two branches of C meet.
double crossover_gamma();

// Tabulated C(gamma) with 4-point Lagrange interpolation on a uniform grid
// over [0, gamma_max]; falls back to direct evaluation beyond it. Immutable
// after construction.
class BoundTable {
 public:
  explicit BoundTable(double gamma_max = 200.0, double step = 1.0 / 16.0);

  double operator()(double gamma) const;
  double gamma_max() const { return gamma_max_; }

  // Process-wide table, built on first use.
  static const BoundTable& shared();

 private:
  double gamma_max_;
  double step_;
  std::vector<double> branch_;  // spheroidal branch at k * step
};

}  // namespace cgent
