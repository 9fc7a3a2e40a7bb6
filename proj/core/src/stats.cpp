#include "cgent/stats.hpp"

#include <cmath>
#include <vector>

#include "cgent/error.hpp"
#include "cgent/numeric.hpp"

namespace cgent {

double discrete_variance(std::span<const double> masses, std::span<const double> centers) {
  if (masses.size() != centers.size())
    throw InvalidParameter("masses and centers differ in length");
  // Two passes around the mean; algebraically identical to the raw-moment form
  // but without its cancellation on wide grids.
  CompensatedSum mean_acc;
  for (std::size_t k = 0; k < masses.size(); ++k) mean_acc += masses[k] * centers[k];
  const double mean = mean_acc.value();
  CompensatedSum var_acc;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const double dx = centers[k] - mean;
    var_acc += masses[k] * dx * dx;
  }
  return std::max(0.0, var_acc.value());
}

double discrete_variance(const DiscreteDistribution& d) {
  const auto& g = d.grid();
  std::vector<double> centers(g.size());
  for (int j = g.j_min(); j <= g.j_max(); ++j) centers[g.offset(j)] = g.center(j);
  return discrete_variance(d.masses(), centers);
}

double discrete_entropy(std::span<const double> masses) {
  CompensatedSum acc;
  for (double q : masses) {
    if (q > kEntropyMassFloor) acc += -q * std::log(q);
  }
  return acc.value();
}

double discrete_entropy(const DiscreteDistribution& d) { return discrete_entropy(d.masses()); }

double histogram_variance(const HistogramDensity& h) {
  const double w = h.width();
  return discrete_variance(h.distribution()) + w * w / 12.0;
}

double histogram_entropy(const HistogramDensity& h) {
  return discrete_entropy(h.distribution()) + std::log(h.width());
}

SummaryStat summarize(const HistogramDensity& h) {
  return {histogram_variance(h), histogram_entropy(h)};
}

}  // namespace cgent
