#include "cgent/analysis.hpp"

#include <cmath>

#include "cgent/error.hpp"
#include "cgent/stats.hpp"

namespace cgent {

MarginalSet extract_marginals(const JointCounts& position, const JointCounts& momentum) {
  if (position.variable_pair() != VariablePair::Position)
    throw ConfigError("first scan must be a position scan");
  if (momentum.variable_pair() != VariablePair::Momentum)
    throw ConfigError("second scan must be a momentum scan");
  if (!(position.geometry() == momentum.geometry()))
    throw ConfigError("position and momentum scans declare different optical geometries");
  return {global_marginal(position, Sign::Plus), global_marginal(position, Sign::Minus),
          global_marginal(momentum, Sign::Plus), global_marginal(momentum, Sign::Minus)};
}

PreparedCell prepare_cell(const MarginalSet& marginals, const CellConfig& cell) {
  return {cell, rebin_marginal(marginals.position(position_sign(cell.pairing)), cell.n),
          rebin_marginal(marginals.momentum(momentum_sign(cell.pairing)), cell.m)};
}

MarginalStats marginal_stats(const CountHistogram& h, std::span<const double> center_offsets) {
  const auto dist = DiscreteDistribution::from_counts(h);
  const auto& g = dist.grid();
  const double w = g.width();
  if (center_offsets.empty()) {
    const double dv = discrete_variance(dist);
    const HistogramDensity density(dist);
    return {w, dv, dv + w * w / 12.0, histogram_entropy(density)};
  }
  if (center_offsets.size() != g.size())
    throw InvalidParameter("one center offset per bin is required");

  std::vector<double> centers(g.size());
  for (std::size_t k = 0; k < centers.size(); ++k)
    centers[k] = g.center(g.index_at(k)) + center_offsets[k];
  const double dv = discrete_variance(dist.masses(), centers);

  // Bin k spans the midpoints to its neighbours; outer bins keep half a
  // nominal width beyond their moved center.
  const auto masses = dist.masses();
  double entropy = discrete_entropy(masses);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (masses[k] <= kEntropyMassFloor) continue;
    const double lo = k == 0 ? centers[k] - 0.5 * w : 0.5 * (centers[k - 1] + centers[k]);
    const double hi =
        k + 1 == centers.size() ? centers[k] + 0.5 * w : 0.5 * (centers[k] + centers[k + 1]);
    entropy += masses[k] * std::log(std::max(hi - lo, 1e-12 * w));
  }
  return {w, dv, dv + w * w / 12.0, entropy};
}

std::vector<WitnessReport> evaluate_cell(const PreparedCell& cell,
                                         std::span<const WitnessId> witnesses,
                                         const BoundFunction& bound,
                                         std::span<const double> position_offsets,
                                         std::span<const double> momentum_offsets) {
  const auto r = marginal_stats(cell.position, position_offsets);
  const auto s = marginal_stats(cell.momentum, momentum_offsets);
  const BinWidths widths{r.width, s.width};
  const Pairing pairing = cell.config.pairing;
  std::vector<WitnessReport> out;
  out.reserve(witnesses.size());
  for (WitnessId id : witnesses) {
    switch (id) {
      case WitnessId::MgvtContinuous:
        out.push_back(mgvt_continuous(r.histogram_variance, s.histogram_variance, pairing));
        break;
      case WitnessId::EntropicContinuous:
        out.push_back(entropic_continuous(r.histogram_entropy, s.histogram_entropy, pairing));
        break;
      case WitnessId::CoarseVariance:
        out.push_back(coarse_variance_from(r.histogram_variance, s.histogram_variance, pairing, widths));
        break;
      case WitnessId::CoarseEntropic:
        out.push_back(coarse_entropic_from(r.histogram_entropy, s.histogram_entropy, pairing, widths, bound));
        break;
      case WitnessId::NaiveDiscrete:
        out.push_back(naive_discrete_from(r.discrete_variance, s.discrete_variance, pairing, widths));
        break;
    }
  }
  return out;
}

}  // namespace cgent
