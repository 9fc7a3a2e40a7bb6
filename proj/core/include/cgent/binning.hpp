#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace cgent {

// Uniform 1-D lattice of bins with centers j*width for j in [j_min, j_max].
// Bin j covers [(j - 1/2) width, (j + 1/2) width]; a center always sits on
// the origin.
class BinGrid {
 public:
  BinGrid(double width, int j_min, int j_max);

  // Smallest symmetric grid [-J, J] whose outer edges reach +/- half_extent.
  static BinGrid covering(double width, double half_extent);

  double width() const { return width_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  std::size_t size() const { return static_cast<std::size_t>(j_max_ - j_min_ + 1); }

  double center(int j) const { return j * width_; }
  double lower_edge(int j) const { return (j - 0.5) * width_; }
  double upper_edge(int j) const { return (j + 0.5) * width_; }
  double lower() const { return lower_edge(j_min_); }
  double upper() const { return upper_edge(j_max_); }

  bool contains_index(int j) const { return j >= j_min_ && j <= j_max_; }
  std::size_t offset(int j) const { return static_cast<std::size_t>(j - j_min_); }
  int index_at(std::size_t offset) const { return j_min_ + static_cast<int>(offset); }

  // Bin claiming z under the half-open rule [(j-1/2)w, (j+1/2)w); nullopt
  // outside the covered range.
  std::optional<int> index_of(double z) const;

  bool operator==(const BinGrid&) const = default;

 private:
  double width_;
  int j_min_;
  int j_max_;
};

// Closed-interval rectangular window: 1 iff z in [(j-1/2)eta, (j+1/2)eta].
int rect_indicator(int j, double eta, double z);

// Exact probability mass of an interval [a, b].
using IntervalMass = std::function<double(double a, double b)>;

struct CountHistogram {
  CountHistogram(BinGrid grid, std::vector<std::int64_t> counts);

  BinGrid grid;
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  std::int64_t at(int j) const {
    return grid.contains_index(j) ? counts[grid.offset(j)] : 0;
  }
};

// Normalized bin masses on a grid.
class DiscreteDistribution {
 public:
  static constexpr double kNormTolerance = 1e-9;

  // Throws InvariantViolation unless every mass is >= 0 and they sum to 1.
  DiscreteDistribution(BinGrid grid, std::vector<double> masses);

  // Divides nonnegative weights by their sum.
  static DiscreteDistribution normalized(BinGrid grid, std::vector<double> weights);
  // Throws InvariantViolation for a zero total.
  static DiscreteDistribution from_counts(const CountHistogram& h);

  const BinGrid& grid() const { return grid_; }
  std::span<const double> masses() const { return masses_; }
  double mass(int j) const { return grid_.contains_index(j) ? masses_[grid_.offset(j)] : 0.0; }

 private:
  BinGrid grid_;
  std::vector<double> masses_;
};

struct CoarseGrained {
  DiscreteDistribution distribution;
  double captured_fraction;
};

// Masses of the grid's bins under `mass`, renormalized. Throws TruncationError
// when the grid holds less than `min_captured` of the total probability.
CoarseGrained coarse_grain(const IntervalMass& mass, const BinGrid& grid,
                           double min_captured = 0.999);

// Groups `factor` consecutive bins around every multiple of `factor`; the
// output grid is `factor` times wider. factor must be odd and positive.
CountHistogram rebin(const CountHistogram& h, int factor);
DiscreteDistribution rebin(const DiscreteDistribution& d, int factor);

// Piecewise-constant density: mass_k / width on bin k, zero elsewhere.
class HistogramDensity {
 public:
  explicit HistogramDensity(DiscreteDistribution d) : dist_(std::move(d)) {}

  const BinGrid& grid() const { return dist_.grid(); }
  const DiscreteDistribution& distribution() const { return dist_; }
  std::span<const double> masses() const { return dist_.masses(); }
  double width() const { return dist_.grid().width(); }

  double density_of_bin(int j) const { return dist_.mass(j) / width(); }
  // Evaluates the density at z (half-open bins).
  double operator()(double z) const;

 private:
  DiscreteDistribution dist_;
};

HistogramDensity histogram_density(DiscreteDistribution d);

}  // namespace cgent
