#include "cgent/binning.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "cgent/error.hpp"
#include "cgent/numeric.hpp"

namespace cgent {

namespace {

void require_odd_factor(int factor) {
  if (factor < 1 || factor % 2 == 0) {
    throw InvalidParameter("rebin factor must be an odd positive integer, got " +
                           std::to_string(factor));
  }
}

// Output index range for grouping [j_min, j_max] in odd groups of `factor`.
std::pair<int, int> rebinned_range(const BinGrid& g, int factor) {
  const int half = (factor - 1) / 2;
  auto floor_div = [](int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };
  const int lo = -floor_div(-(g.j_min() - half), factor);  // ceil
  const int hi = floor_div(g.j_max() + half, factor);
  return {lo, hi};
}

template <typename T>
std::vector<T> group_sums(const BinGrid& g, std::span<const T> values, int factor,
                          int lo, int hi) {
  const int half = (factor - 1) / 2;
  std::vector<T> out(static_cast<std::size_t>(hi - lo + 1), T{});
  for (int J = lo; J <= hi; ++J) {
    T acc{};
    for (int j = J * factor - half; j <= J * factor + half; ++j) {
      if (g.contains_index(j)) acc += values[g.offset(j)];
    }
    out[static_cast<std::size_t>(J - lo)] = acc;
  }
  return out;
}

}  // namespace

BinGrid::BinGrid(double width, int j_min, int j_max)
    : width_(width), j_min_(j_min), j_max_(j_max) {
  if (!(width > 0.0) || !std::isfinite(width))
    throw InvalidParameter("bin width must be positive and finite");
  if (j_min > j_max) throw InvalidParameter("bin grid needs j_min <= j_max");
}

BinGrid BinGrid::covering(double width, double half_extent) {
  if (!(width > 0.0)) throw InvalidParameter("bin width must be positive");
  const double bins = std::ceil(half_extent / width - 0.5);
  const int j = static_cast<int>(std::max(0.0, bins));
  return BinGrid(width, -j, j);
}

std::optional<int> BinGrid::index_of(double z) const {
  const int j = static_cast<int>(std::floor(z / width_ + 0.5));
  if (!contains_index(j)) return std::nullopt;
  return j;
}

int rect_indicator(int j, double eta, double z) {
  if (!(eta > 0.0)) throw InvalidParameter("rectangle width must be positive");
  return (z >= (j - 0.5) * eta && z <= (j + 0.5) * eta) ? 1 : 0;
}

CountHistogram::CountHistogram(BinGrid g, std::vector<std::int64_t> c)
    : grid(g), counts(std::move(c)) {
  if (counts.size() != grid.size())
    throw InvariantViolation("count vector length does not match grid");
  for (auto n : counts) {
    if (n < 0) throw InvariantViolation("counts must be nonnegative");
  }
}

std::int64_t CountHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

DiscreteDistribution::DiscreteDistribution(BinGrid grid, std::vector<double> masses)
    : grid_(grid), masses_(std::move(masses)) {
  if (masses_.size() != grid_.size())
    throw InvariantViolation("mass vector length does not match grid");
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw InvariantViolation("masses must be finite and nonnegative");
  }
  const double total = compensated_sum(masses_);
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "distribution is not normalized (sum = " << total << ")";
    throw InvariantViolation(msg.str());
  }
}

DiscreteDistribution DiscreteDistribution::normalized(BinGrid grid,
                                                      std::vector<double> weights) {
  const double total = compensated_sum(weights);
  if (!(total > 0.0)) throw InvariantViolation("cannot normalize zero total weight");
  for (double& w : weights) w /= total;
  return DiscreteDistribution(grid, std::move(weights));
}

DiscreteDistribution DiscreteDistribution::from_counts(const CountHistogram& h) {
  if (h.total() <= 0) throw InvariantViolation("histogram has no counts");
  std::vector<double> w(h.counts.begin(), h.counts.end());
  return normalized(h.grid, std::move(w));
}

CoarseGrained coarse_grain(const IntervalMass& mass, const BinGrid& grid,
                           double min_captured) {
  std::vector<double> masses(grid.size());
  CompensatedSum captured;
  for (int j = grid.j_min(); j <= grid.j_max(); ++j) {
    const double m = std::max(0.0, mass(grid.lower_edge(j), grid.upper_edge(j)));
    masses[grid.offset(j)] = m;
    captured += m;
  }
  const double fraction = captured.value();
  if (!(fraction >= min_captured)) {
    std::ostringstream msg;
    msg << "grid captures only " << fraction << " of the probability (need "
        << min_captured << ")";
    throw TruncationError(msg.str(), fraction);
  }
  return {DiscreteDistribution::normalized(grid, std::move(masses)), fraction};
}

CountHistogram rebin(const CountHistogram& h, int factor) {
  require_odd_factor(factor);
  if (factor == 1) return h;
  const auto [lo, hi] = rebinned_range(h.grid, factor);
  auto sums = group_sums<std::int64_t>(h.grid, h.counts, factor, lo, hi);
  return CountHistogram(BinGrid(h.grid.width() * factor, lo, hi), std::move(sums));
}

DiscreteDistribution rebin(const DiscreteDistribution& d, int factor) {
  require_odd_factor(factor);
  if (factor == 1) return d;
  const auto [lo, hi] = rebinned_range(d.grid(), factor);
  auto sums = group_sums<double>(d.grid(), d.masses(), factor, lo, hi);
  return DiscreteDistribution::normalized(BinGrid(d.grid().width() * factor, lo, hi),
                                          std::move(sums));
}

double HistogramDensity::operator()(double z) const {
  const auto j = grid().index_of(z);
  return j ? density_of_bin(*j) : 0.0;
}

HistogramDensity histogram_density(DiscreteDistribution d) {
  return HistogramDensity(std::move(d));
}

}  // namespace cgent
