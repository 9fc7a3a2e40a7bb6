#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgent/ingest.hpp"
#include "cgent/model.hpp"
#include "cgent/witness.hpp"

namespace cgent::cli {

enum class OutputFormat { Csv, Json };

std::vector<int> default_factors();  // 1, 3, ..., 21

struct SweepConfig {
  std::vector<int> n_values = default_factors();
  std::vector<int> m_values = default_factors();
  std::vector<Pairing> pairings = {Pairing::PlusMinus, Pairing::MinusPlus};
  std::vector<WitnessId> witnesses = {WitnessId::CoarseVariance, WitnessId::CoarseEntropic};
  std::uint64_t seed = 1;
  bool errors = false;
  int replicates = 1000;
  bool fast_mode = false;
  // Detection threshold with errors on: value + k * stderr < 0.
  double detection_sigma = 1.0;

  // Throws ConfigError for empty lists or even / non-positive factors.
  void validate() const;
};

struct SweepRow {
  int n;
  int m;
  Pairing pairing;
  WitnessId witness;
  double value;
  std::optional<double> uncertainty;
  bool detected;
};

struct SweepResult {
  std::vector<SweepRow> grid;
  // The n == m rows of `grid`, copied in grid order.
  std::vector<SweepRow> diagonal;
};

SweepResult run_sweep(const JointCounts& position, const JointCounts& momentum,
                      const SweepConfig& config);
void write_sweep(std::ostream& out, const SweepResult& result, OutputFormat format);

struct SimulateConfig {
  double sigma_plus = 15.7;
  double sigma_minus = 3.93;
  OpticalGeometry geometry{};
  double total_counts = 1e6;
  std::uint64_t seed = 1;
  std::optional<int> half_width;  // detector indices; automatic when unset
};

struct SimulatedScans {
  JointCounts position;
  JointCounts momentum;
};

SimulatedScans simulate(const SimulateConfig& config);
// Writes <prefix>.position.txt and <prefix>.momentum.txt; returns both paths.
std::pair<std::filesystem::path, std::filesystem::path> write_simulation(
    const std::filesystem::path& prefix, const SimulatedScans& scans);

struct DemoConfig {
  double sigma = 1.0;
  std::optional<double> sigma_minus;  // must equal sigma when given
  double multiplier = 3.0;            // bin width in units of marginal std
  std::uint64_t seed = 1;
  bool analytic = false;              // exact masses instead of sampled counts
  double total_counts = 1e6;
};

struct DemoReport {
  DemoConfig config;
  BinWidths widths;
  WitnessReport naive;
  WitnessReport coarse_variance;
  WitnessReport coarse_entropic;
};

// Separable-state false-positive demonstration on (x+, p-). Throws
// InvalidParameter for entangled parameters.
DemoReport run_false_positive_demo(const DemoConfig& config);
void write_demo(std::ostream& out, const DemoReport& report, OutputFormat format);

struct BoundTableConfig {
  double gamma_min = 0.0;
  double gamma_max = 100.0;
  int points = 201;
  bool log_spacing = false;

  void validate() const;
};

// CSV with header "gamma,C".
void write_bound_table(std::ostream& out, const BoundTableConfig& config);

std::string format_number(double v);

}  // namespace cgent::cli
