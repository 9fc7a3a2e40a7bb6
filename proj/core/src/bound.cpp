#include "cgent/bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgent/error.hpp"
#include "cgent/spheroidal.hpp"

namespace cgent {

double spheroidal_branch(double gamma) {
  if (!(gamma >= 0.0)) throw InvalidParameter("gamma must be nonnegative");
  const double r = radial_r00(gamma / 8.0, 1.0);
  return r * r / (4.0 * std::numbers::pi);
}

double coarse_bound_c(double gamma) {
  if (!(gamma >= 0.0)) throw InvalidParameter("gamma must be nonnegative, got " + std::to_string(gamma));
  return std::min(kFineBinBound, spheroidal_branch(gamma));
}

double crossover_gamma() {
  static const double root = [] {
    double lo = 0.0;
    double hi = 64.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (spheroidal_branch(mid) > kFineBinBound)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

BoundTable::BoundTable(double gamma_max, double step) : gamma_max_(gamma_max), step_(step) {
  if (!(gamma_max > 0.0) || !(step > 0.0) || gamma_max < 3.0 * step)
    throw InvalidParameter("bad bound table range");
  const auto n = static_cast<std::size_t>(std::ceil(gamma_max / step)) + 1;
  branch_.resize(n);
  for (std::size_t k = 0; k < n; ++k) branch_[k] = spheroidal_branch(static_cast<double>(k) * step);
  gamma_max_ = static_cast<double>(n - 1) * step;
}

double BoundTable::operator()(double gamma) const {
  if (!(gamma >= 0.0)) throw InvalidParameter("gamma must be nonnegative");
  if (gamma > gamma_max_) return coarse_bound_c(gamma);
  const auto last = static_cast<long>(branch_.size()) - 1;
  const long i = std::clamp(static_cast<long>(std::floor(gamma / step_)) - 1, 0L, last - 3);
  const double t = gamma / step_ - static_cast<double>(i);  // position relative to node i
  double value = 0.0;
  for (int a = 0; a < 4; ++a) {
    double weight = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) weight *= (t - b) / static_cast<double>(a - b);
    }
    value += weight * branch_[static_cast<std::size_t>(i + a)];
  }
  return std::min(kFineBinBound, value);
}

const BoundTable& BoundTable::shared() {
  static const BoundTable table;
  return table;
}

}  // namespace cgent
