#pragma once

#include <span>
#include <vector>

namespace cgent {

struct Eigenpair {
  double value;
  std::vector<double> vector;  // unit 2-norm
};

// Number of eigenvalues of the symmetric tridiagonal matrix below x
// (Sturm sequence).
int sturm_count(std::span<const double> diag, std::span<const double> off, double x);

// Lowest eigenpair of a symmetric tridiagonal matrix with diagonal `diag` and
// sub/super-diagonal `off` (size diag.size() - 1). Eigenvalue by Sturm
// bisection, eigenvector by inverse iteration.
Eigenpair lowest_eigenpair(std::span<const double> diag, std::span<const double> off);

}  // namespace cgent
