#include "cgent/spheroidal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cgent/error.hpp"
#include "cgent/tridiagonal.hpp"

namespace cgent {

namespace {

// Legendre P_{2k}(0) for k = 0 .. n-1.
std::vector<double> legendre_even_at_zero(std::size_t n) {
  std::vector<double> p(n);
  double value = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = value;
    const double r = 2.0 * static_cast<double>(k);
    value *= -(r + 1.0) / (r + 2.0);
  }
  return p;
}

}  // namespace

SpheroidalCharacteristic spheroidal_characteristic(double c, const SpectralOptions& opts) {
  if (!(c >= 0.0) || c > opts.max_parameter)
    throw InvalidParameter("spheroidal parameter c out of range: " + std::to_string(c));
  if (c == 0.0) return {0.0, 0.0, {1.0 / std::sqrt(2.0)}};

  const double c2 = c * c;
  int n = std::min(opts.max_terms, 16 + static_cast<int>(std::ceil(c)));
  double previous = std::numeric_limits<double>::quiet_NaN();
  while (true) {
    // Legendre-Galerkin matrix in the orthonormal basis sqrt((2r+1)/2) P_r,
    // r = 0, 2, 4, ...
    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n; ++k) {
      const double r = 2.0 * k;
      diag[static_cast<std::size_t>(k)] =
          r * (r + 1.0) + c2 * (2.0 * r * r + 2.0 * r - 1.0) / ((2.0 * r - 1.0) * (2.0 * r + 3.0));
    }
    for (int k = 0; k + 1 < n; ++k) {
      const double r = 2.0 * k;
      off[static_cast<std::size_t>(k)] = c2 * (r + 1.0) * (r + 2.0) /
                                         ((2.0 * r + 3.0) * std::sqrt((2.0 * r + 1.0) * (2.0 * r + 5.0)));
    }
    auto pair = lowest_eigenpair(diag, off);

    const double peak = std::abs(*std::max_element(
        pair.vector.begin(), pair.vector.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); }));
    const bool tail_small = std::abs(pair.vector.back()) <= 1e-14 * peak;
    const bool settled =
        std::abs(pair.value - previous) <= opts.tolerance * std::max(1.0, std::abs(pair.value));
    if (tail_small && settled) {
      auto& v = pair.vector;
      if (v[0] < 0.0)
        for (double& x : v) x = -x;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] *= std::sqrt((4.0 * k + 1.0) / 2.0);
      return {c, pair.value, std::move(v)};
    }
    if (n >= opts.max_terms)
      throw ConvergenceError("spheroidal eigenvalue did not converge at c = " + std::to_string(c));
    previous = pair.value;
    n = std::min(opts.max_terms, 2 * n);
  }
}

double SpheroidalCharacteristic::angular(double eta) const {
  // Even-degree Legendre values by the three-term recurrence.
  double p_prev = 1.0;  // P_0
  double p_cur = eta;   // P_1
  double sum = d.empty() ? 0.0 : d[0];
  int degree = 1;
  for (std::size_t k = 1; k < d.size(); ++k) {
    while (degree < static_cast<int>(2 * k)) {
      const double next = ((2.0 * degree + 1.0) * eta * p_cur - degree * p_prev) / (degree + 1.0);
      p_prev = p_cur;
      p_cur = next;
      ++degree;
    }
    sum += d[k] * p_cur;
  }
  return sum;
}

std::vector<double> spherical_bessel_j(int max_order, double x) {
  if (max_order < 0 || !(x >= 0.0)) throw InvalidParameter("bad spherical Bessel arguments");
  std::vector<double> j(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  // Miller's backward recurrence, normalized by sum (2n+1) j_n^2 = 1.
  const int start = max_order + static_cast<int>(x) + 40;
  std::vector<double> buf(static_cast<std::size_t>(start) + 2, 0.0);
  buf[static_cast<std::size_t>(start)] = 1.0;
  for (int n = start; n >= 1; --n) {
    auto& lower = buf[static_cast<std::size_t>(n - 1)];
    lower = (2.0 * n + 1.0) / x * buf[static_cast<std::size_t>(n)] -
            buf[static_cast<std::size_t>(n + 1)];
    // Keep squares finite for the normalization sum.
    if (std::abs(lower) > 1e100) {
      for (int m = n - 1; m <= start + 1; ++m) buf[static_cast<std::size_t>(m)] *= 1e-100;
    }
  }
  double norm = 0.0;
  for (int n = start; n >= 0; --n) {
    const double v = buf[static_cast<std::size_t>(n)];
    norm += (2.0 * n + 1.0) * v * v;
  }
  norm = std::sqrt(norm);
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const bool use_j0 = std::abs(j0) >= std::abs(j1);
  const double reference = use_j0 ? j0 : j1;
  const double computed = use_j0 ? buf[0] : buf[1];
  const double sign = (reference >= 0.0) == (computed >= 0.0) ? 1.0 : -1.0;
  for (int n = 0; n <= max_order; ++n) j[static_cast<std::size_t>(n)] = sign * buf[static_cast<std::size_t>(n)] / norm;
  return j;
}

double radial_r00(double c, double xi, const SpectralOptions& opts) {
  if (!(xi >= 0.0)) throw InvalidParameter("radial coordinate must be nonnegative");
  const auto sc = spheroidal_characteristic(c, opts);
  if (xi == 1.0) {
    // The finite Fourier transform eigen-relation at eta = 0 gives
    // R00(c, 1) = d_0 / S00(c, 0); every term of S00(c, 0) has the same sign.
    const auto p0 = legendre_even_at_zero(sc.d.size());
    double s0 = 0.0;
    for (std::size_t k = sc.d.size(); k-- > 0;) s0 += sc.d[k] * p0[k];
    return sc.d[0] / s0;
  }
  // Bessel-series form: sum (-1)^(r/2) d_r j_r(c xi) / sum d_r.
  const int max_order = 2 * static_cast<int>(sc.d.size() - 1);
  const auto jn = spherical_bessel_j(max_order, c * xi);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = sc.d.size(); k-- > 0;) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    num += sign * sc.d[k] * jn[2 * k];
    den += sc.d[k];
  }
  return num / den;
}

}  // namespace cgent
