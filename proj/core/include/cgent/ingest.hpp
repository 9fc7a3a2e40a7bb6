#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "cgent/binning.hpp"
#include "cgent/variables.hpp"

namespace cgent {

// Lens and slit parameters of the near-field (position) and far-field
// (momentum) detection arms. All lengths in mm. Defaults are the reference
// setup: 4x imaging telescope, 250 mm Fourier lens, 650 nm photons.
struct OpticalGeometry {
  double f1_mm = 50.0;
  double f2_mm = 200.0;
  double f3_mm = 250.0;
  double lambda_mm = 650e-6;
  double s_x_mm = 0.050;
  double s_p_mm = 0.020;
  double micrometer_step_mm = 0.01;

  // Throws InvalidParameter if any length is not positive and finite.
  void validate() const;

  // Detector-plane slit width / scan step of the given arm.
  double scan_step(VariablePair pair) const {
    return pair == VariablePair::Position ? s_x_mm : s_p_mm;
  }

  bool operator==(const OpticalGeometry&) const = default;
};

// Width of the unit global-variable bin in source-plane units:
// position 2 s_x f1/f2 [mm], momentum 2 s_p 2pi/(f3 lambda) [1/mm].
double detector_to_source_scale(const OpticalGeometry& g, VariablePair pair);

// Two-detector coincidence counts. Row r is detector-1 index i = i0 + r,
// column c is detector-2 index j = j0 + c.
class JointCounts {
 public:
  JointCounts(VariablePair pair, double step_mm, OpticalGeometry geometry, int i0, int j0,
              std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts);

  // Centered indices: i0 = -(rows/2), j0 = -(cols/2).
  static JointCounts centered(VariablePair pair, double step_mm, OpticalGeometry geometry,
                              std::size_t rows, std::size_t cols,
                              std::vector<std::int64_t> counts);

  VariablePair variable_pair() const { return pair_; }
  double step_mm() const { return step_mm_; }
  const OpticalGeometry& geometry() const { return geometry_; }
  int i0() const { return i0_; }
  int j0() const { return j0_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t at(std::size_t r, std::size_t c) const { return counts_[r * cols_ + c]; }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t total() const;

  // Same shape and metadata, different cell counts.
  JointCounts with_counts(std::vector<std::int64_t> counts) const;

  bool operator==(const JointCounts&) const = default;

 private:
  VariablePair pair_;
  double step_mm_;
  OpticalGeometry geometry_;
  int i0_;
  int j0_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> counts_;
};

// Text format: "# key=value" header lines (several pairs may share a line,
// separated by commas), then one comma-separated row of counts per line.
JointCounts read_joint_counts(std::istream& in);
JointCounts load_joint_counts(const std::filesystem::path& path);
void write_joint_counts(std::ostream& out, const JointCounts& jc);
void save_joint_counts(const std::filesystem::path& path, const JointCounts& jc);

// Histogram of i + j (Plus) or i - j (Minus), on a grid whose width is the
// base global bin of the file's arm. Counts are conserved exactly.
CountHistogram global_marginal(const JointCounts& jc, Sign sign);

CountHistogram rebin_marginal(const CountHistogram& h, int factor);

}  // namespace cgent
