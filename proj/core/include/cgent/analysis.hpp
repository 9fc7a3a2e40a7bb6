#pragma once

#include <span>
#include <vector>

#include "cgent/binning.hpp"
#include "cgent/ingest.hpp"
#include "cgent/witness.hpp"

namespace cgent {

// The four global marginals of a position scan and a momentum scan.
struct MarginalSet {
  CountHistogram x_plus;
  CountHistogram x_minus;
  CountHistogram p_plus;
  CountHistogram p_minus;

  const CountHistogram& position(Sign s) const { return s == Sign::Plus ? x_plus : x_minus; }
  const CountHistogram& momentum(Sign s) const { return s == Sign::Plus ? p_plus : p_minus; }
};

// Throws ConfigError unless `position` is a position scan, `momentum` a
// momentum scan, and both carry the same optical geometry.
MarginalSet extract_marginals(const JointCounts& position, const JointCounts& momentum);

// One point of a bin-size sweep: position bins grouped by n, momentum by m.
struct CellConfig {
  Pairing pairing;
  int n;
  int m;
};

struct PreparedCell {
  CellConfig config;
  CountHistogram position;
  CountHistogram momentum;
};

PreparedCell prepare_cell(const MarginalSet& marginals, const CellConfig& cell);

struct MarginalStats {
  double width;
  double discrete_variance;
  double histogram_variance;
  double histogram_entropy;
};

// Statistics of a count histogram. With `center_offsets` (one per bin) the
// bin centers move to x_k + offset_k: the moments use the moved centers and
// the entropy uses bin widths bounded by midpoints between moved centers.
MarginalStats marginal_stats(const CountHistogram& h, std::span<const double> center_offsets = {});

// Evaluates the requested witnesses on a prepared cell. Continuous witnesses
// use the histogram-density variance and entropy as plug-in estimates.
std::vector<WitnessReport> evaluate_cell(const PreparedCell& cell,
                                         std::span<const WitnessId> witnesses,
                                         const BoundFunction& bound = {},
                                         std::span<const double> position_offsets = {},
                                         std::span<const double> momentum_offsets = {});

}  // namespace cgent
