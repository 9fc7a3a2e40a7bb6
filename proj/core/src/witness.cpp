#include "cgent/witness.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cgent/bound.hpp"
#include "cgent/error.hpp"
#include "cgent/stats.hpp"

namespace cgent {

namespace {

constexpr std::array<std::pair<WitnessId, std::string_view>, 5> kNames = {{
    {WitnessId::MgvtContinuous, "mgvt_continuous"},
    {WitnessId::EntropicContinuous, "entropic_continuous"},
    {WitnessId::CoarseVariance, "coarse_variance"},
    {WitnessId::CoarseEntropic, "coarse_entropic"},
    {WitnessId::NaiveDiscrete, "naive_discrete"},
}};

WitnessReport make_report(WitnessId id, Pairing pairing, double value, double r_stat,
                          double s_stat, std::optional<BinWidths> widths) {
  if (!std::isfinite(value))
    throw InvalidParameter(std::string("non-finite value for witness ") +
                           std::string(to_string(id)));
  WitnessReport rep{id, pairing, value, r_stat, s_stat, widths, std::nullopt, false};
  rep.unsafe = id == WitnessId::NaiveDiscrete;
  return rep;
}

void require_positive_variances(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidParameter("variances must be positive");
}

}  // namespace

std::string_view to_string(WitnessId id) {
  for (const auto& [k, name] : kNames)
    if (k == id) return name;
  return "?";
}

std::optional<WitnessId> parse_witness_id(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

bool WitnessReport::detected(double k_sigma) const {
  if (uncertainty) return value + k_sigma * *uncertainty < 0.0;
  return value < 0.0;
}

Pairing pairing_of(Variable position, Variable momentum) {
  if (!is_position(position) || is_position(momentum))
    throw InvalidPairing("witness needs a position marginal and a momentum marginal");
  if (sign_of(position) == sign_of(momentum))
    throw InvalidPairing("witness pairs x+ with p- or x- with p+");
  return sign_of(position) == Sign::Plus ? Pairing::PlusMinus : Pairing::MinusPlus;
}

WitnessReport mgvt_continuous(double var_r, double var_s, Pairing pairing) {
  require_positive_variances(var_r, var_s);
  return make_report(WitnessId::MgvtContinuous, pairing, var_r * var_s - 1.0, var_r, var_s,
                     std::nullopt);
}

WitnessReport entropic_continuous(double h_r, double h_s, Pairing pairing) {
  const double bound = std::log(2.0 * std::numbers::pi * std::numbers::e);
  return make_report(WitnessId::EntropicContinuous, pairing, h_r + h_s - bound, h_r, h_s,
                     std::nullopt);
}

WitnessReport coarse_variance_from(double hist_var_r, double hist_var_s, Pairing pairing,
                                   BinWidths widths) {
  require_positive_variances(hist_var_r, hist_var_s);
  return make_report(WitnessId::CoarseVariance, pairing, hist_var_r * hist_var_s - 1.0,
                     hist_var_r, hist_var_s, widths);
}

WitnessReport coarse_variance_witness(const MarginalHistogram& r, const MarginalHistogram& s) {
  const Pairing pairing = pairing_of(r.variable, s.variable);
  return coarse_variance_from(histogram_variance(r.density), histogram_variance(s.density),
                              pairing, {r.density.width(), s.density.width()});
}

WitnessReport coarse_entropic_from(double hist_h_r, double hist_h_s, Pairing pairing,
                                   BinWidths widths, const BoundFunction& bound) {
  const double gamma = widths.position * widths.momentum;
  const double c = bound ? bound(gamma) : coarse_bound_c(gamma);
  return make_report(WitnessId::CoarseEntropic, pairing, hist_h_r + hist_h_s + std::log(c),
                     hist_h_r, hist_h_s, widths);
}

WitnessReport coarse_entropic_witness(const MarginalHistogram& r, const MarginalHistogram& s,
                                      const BoundFunction& bound) {
  const Pairing pairing = pairing_of(r.variable, s.variable);
  return coarse_entropic_from(histogram_entropy(r.density), histogram_entropy(s.density),
                              pairing, {r.density.width(), s.density.width()}, bound);
}

WitnessReport naive_discrete_from(double dvar_r, double dvar_s, Pairing pairing,
                                  BinWidths widths) {
  return make_report(WitnessId::NaiveDiscrete, pairing, dvar_r * dvar_s - 1.0, dvar_r, dvar_s,
                     widths);
}

WitnessReport naive_discrete_witness(const MarginalDistribution& r,
                                     const MarginalDistribution& s) {
  const Pairing pairing = pairing_of(r.variable, s.variable);
  return naive_discrete_from(discrete_variance(r.distribution), discrete_variance(s.distribution),
                             pairing,
                             {r.distribution.grid().width(), s.distribution.grid().width()});
}

}  // namespace cgent
