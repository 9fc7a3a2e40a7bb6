#include "cgent/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgent/error.hpp"

namespace cgent {

int sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
  constexpr double kTiny = 1e-300;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -kTiny;
    if (q < 0.0) ++count;
  }
  return count;
}

Eigenpair lowest_eigenpair(std::span<const double> diag, std::span<const double> off) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n)
    throw InvalidParameter("tridiagonal dimensions are inconsistent");

  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  const double lambda = 0.5 * (lo + hi);

  // Inverse iteration on (T - lambda' I); the shift is nudged off the
  // eigenvalue so the factorization stays finite.
  const double scale = std::max(1.0, std::abs(lambda));
  const double shift = lambda - 1e-12 * scale;
  std::vector<double> v(n, 1.0);
  std::vector<double> c(n), w(n);
  for (int iter = 0; iter < 3; ++iter) {
    // Thomas algorithm.
    double pivot = diag[0] - shift;
    if (pivot == 0.0) pivot = 1e-300;
    c[0] = n > 1 ? off[0] / pivot : 0.0;
    w[0] = v[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - shift - off[i - 1] * c[i - 1];
      if (pivot == 0.0) pivot = 1e-300;
      c[i] = i + 1 < n ? off[i] / pivot : 0.0;
      w[i] = (v[i] - off[i - 1] * w[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) w[i] -= c[i] * w[i + 1];
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return {lambda, std::move(v)};
}

}  // namespace cgent
