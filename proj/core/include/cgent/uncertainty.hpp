#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cgent/analysis.hpp"
#include "cgent/ingest.hpp"
#include "cgent/witness.hpp"

namespace cgent {

enum class JitterMode {
  Independent,  // every bin center moves by its own draw
  Rigid,        // one draw shifts the whole marginal
};

// Bin-center position error for position bins grouped by n:
// micrometer_step * sqrt2 * n * f1/f2 [mm].
double position_center_sigma(const OpticalGeometry& g, int n);
// Bin-center error for momentum bins grouped by m:
// micrometer_step * sqrt2 * 2 m pi / (f3 lambda) [1/mm].
double momentum_center_sigma(const OpticalGeometry& g, int m);

struct ErrorModel {
  bool poisson = true;
  // Center jitter std as a function of the grouping factor; empty = no jitter.
  std::function<double(int)> position_sigma;
  std::function<double(int)> momentum_sigma;
  JitterMode jitter = JitterMode::Independent;
  int replicates = 1000;
  std::uint64_t seed = 0;
  // Permits fewer than 100 replicates (tests and quick looks only).
  bool fast_mode = false;

  // Poisson resampling plus the geometry's bin-center errors.
  static ErrorModel from_geometry(const OpticalGeometry& g, std::uint64_t seed);
  static ErrorModel poisson_only(std::uint64_t seed);
};

struct PropagationResult {
  // reports[cell][witness], nominal values with the Monte Carlo standard
  // deviation attached as the uncertainty.
  std::vector<std::vector<WitnessReport>> reports;
  int replicates_used = 0;
  int replicates_discarded = 0;
};

// Resamples both scans, jitters bin centers and reruns every cell per
// replicate. Deterministic for a fixed seed regardless of thread count.
// Replicates with no counts are discarded; more than 10% discarded throws
// PropagationError.
PropagationResult propagate(const JointCounts& position, const JointCounts& momentum,
                            std::span<const CellConfig> cells,
                            std::span<const WitnessId> witnesses, const ErrorModel& model,
                            const BoundFunction& bound = {});

}  // namespace cgent
