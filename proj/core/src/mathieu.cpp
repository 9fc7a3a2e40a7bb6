#include "cgent/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cgent/error.hpp"
#include "cgent/tridiagonal.hpp"

namespace cgent {

MathieuCharacteristic characteristic_a0(double q, const SpectralOptions& opts) {
  if (!(q >= 0.0) || q > opts.max_parameter)
    throw InvalidParameter("Mathieu parameter q out of range: " + std::to_string(q));
  if (q == 0.0) return {0.0, 0.0, {1.0 / std::numbers::sqrt2}};

  // Symmetrized recurrence in (sqrt2 A_0, A_2, A_4, ...):
  // diag (2k)^2, off-diagonal sqrt2 q then q.
  int n = std::min(opts.max_terms, 16 + static_cast<int>(std::ceil(2.0 * std::sqrt(q))));
  double previous = std::numeric_limits<double>::quiet_NaN();
  while (true) {
    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n; ++k) diag[static_cast<std::size_t>(k)] = 4.0 * k * k;
    for (int k = 0; k + 1 < n; ++k)
      off[static_cast<std::size_t>(k)] = k == 0 ? std::numbers::sqrt2 * q : q;
    auto pair = lowest_eigenpair(diag, off);

    const double peak = std::abs(*std::max_element(
        pair.vector.begin(), pair.vector.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); }));
    const bool tail_small = std::abs(pair.vector.back()) <= 1e-14 * peak;
    const bool settled = std::abs(pair.value - previous) <= opts.tolerance * std::max(1.0, std::abs(pair.value));
    if (tail_small && settled) {
      auto& v = pair.vector;
      if (v[0] < 0.0)
        for (double& x : v) x = -x;
      // Back to A_{2k}; 2 A_0^2 + sum A_{2k}^2 = |v|^2 = 1.
      v[0] /= std::numbers::sqrt2;
      return {q, pair.value, std::move(v)};
    }
    if (n >= opts.max_terms)
      throw ConvergenceError("Mathieu characteristic value did not converge at q = " +
                             std::to_string(q));
    previous = pair.value;
    n = std::min(opts.max_terms, 2 * n);
  }
}

}  // namespace cgent
