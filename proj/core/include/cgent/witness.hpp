#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "cgent/binning.hpp"
#include "cgent/variables.hpp"

namespace cgent {

enum class WitnessId { MgvtContinuous, EntropicContinuous, CoarseVariance, CoarseEntropic, NaiveDiscrete };

std::string_view to_string(WitnessId id);
std::optional<WitnessId> parse_witness_id(std::string_view name);

struct BinWidths {
  double position;  // Delta
  double momentum;  // delta
};

// One evaluated criterion. `value` is the left-hand side minus the separable
// bound, so a negative value flags entanglement.
struct WitnessReport {
  WitnessId id;
  Pairing pairing;
  double value;
  // Variances (variance witnesses) or entropies (entropic witnesses) of the
  // position and momentum marginals that went in.
  double position_statistic;
  double momentum_statistic;
  std::optional<BinWidths> bin_widths;
  std::optional<double> uncertainty;
  // Set only for the naive discrete criterion, which can report entanglement
  // for separable states.
  bool unsafe = false;

  // value < 0, or value + k * uncertainty < 0 when an uncertainty is attached.
  bool detected(double k_sigma = 1.0) const;
};

// A histogram density tagged with the global variable it describes.
struct MarginalHistogram {
  Variable variable;
  HistogramDensity density;
};

struct MarginalDistribution {
  Variable variable;
  DiscreteDistribution distribution;
};

using BoundFunction = std::function<double(double gamma)>;

// Pairing of a position variable with a momentum variable of opposite sign;
// throws InvalidPairing otherwise.
Pairing pairing_of(Variable position, Variable momentum);

// sigma^2[R] sigma^2[S] - 1.
WitnessReport mgvt_continuous(double var_r, double var_s, Pairing pairing = Pairing::PlusMinus);
// h[R] + h[S] - ln(2 pi e).
WitnessReport entropic_continuous(double h_r, double h_s, Pairing pairing = Pairing::PlusMinus);

// Histogram variance product minus one; never negative for separable states.
WitnessReport coarse_variance_witness(const MarginalHistogram& r, const MarginalHistogram& s);
WitnessReport coarse_variance_from(double hist_var_r, double hist_var_s, Pairing pairing,
                                   BinWidths widths);

// h[R^Delta] + h[S^delta] + ln C(Delta delta).
WitnessReport coarse_entropic_witness(const MarginalHistogram& r, const MarginalHistogram& s,
                                      const BoundFunction& bound = {});
WitnessReport coarse_entropic_from(double hist_h_r, double hist_h_s, Pairing pairing,
                                   BinWidths widths, const BoundFunction& bound = {});

// Discrete variance product minus one. Unsafe: demonstrates false positives.
WitnessReport naive_discrete_witness(const MarginalDistribution& r, const MarginalDistribution& s);
WitnessReport naive_discrete_from(double dvar_r, double dvar_s, Pairing pairing, BinWidths widths);

}  // namespace cgent
