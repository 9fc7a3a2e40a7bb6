#pragma once

#include <span>

#include "cgent/binning.hpp"

namespace cgent {

// Variance and differential/discrete Shannon entropy (nats) of one marginal.
struct SummaryStat {
  double variance;
  double entropy;
};

// Masses below this are treated as exactly zero in -q ln q.
inline constexpr double kEntropyMassFloor = 1e-300;

// sum_k q_k x_k^2 - (sum_k q_k x_k)^2 with x_k = k * width.
double discrete_variance(const DiscreteDistribution& d);
// Same moments with caller-supplied bin coordinates (one per grid bin).
double discrete_variance(std::span<const double> masses, std::span<const double> centers);

// -sum q ln q, with 0 ln 0 = 0.
double discrete_entropy(const DiscreteDistribution& d);
double discrete_entropy(std::span<const double> masses);

// Variance of the piecewise-constant density: discrete variance + width^2/12.
double histogram_variance(const HistogramDensity& h);
// Differential entropy of the piecewise-constant density: H + ln(width).
double histogram_entropy(const HistogramDensity& h);

SummaryStat summarize(const HistogramDensity& h);

}  // namespace cgent
