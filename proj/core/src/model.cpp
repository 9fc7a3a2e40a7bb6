#include "cgent/model.hpp"

#include <boost/math/special_functions/owens_t.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "cgent/error.hpp"
#include "cgent/numeric.hpp"

namespace cgent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Owen's T(h, num/den), including the den == 0 limits a = +/- infinity.
double owens_t_ratio(double h, double num, double den) {
  if (den == 0.0) {
    const double t_inf = 0.5 * normal_cdf(-std::abs(h));
    return num >= 0.0 ? t_inf : -t_inf;
  }
  return boost::math::owens_t(h, num / den);
}

// P(Z1 <= h, Z2 <= k) for standard normals with correlation rho.
double bivariate_normal_cdf(double h, double k, double rho) {
  if (h == -kInf || k == -kInf) return 0.0;
  if (h == kInf) return normal_cdf(k);
  if (k == kInf) return normal_cdf(h);
  if (h == 0.0 && k == 0.0) return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
  const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
  const double hk = h * k;
  const double beta = (hk > 0.0 || (hk == 0.0 && h + k >= 0.0)) ? 0.0 : 0.5;
  return 0.5 * normal_cdf(h) + 0.5 * normal_cdf(k) - owens_t_ratio(h, k - rho * h, h * s) -
         owens_t_ratio(k, h - rho * k, k * s) - beta;
}

}  // namespace

GaussianTwoPhotonState::GaussianTwoPhotonState(double sigma_plus, double sigma_minus)
    : sigma_plus_(sigma_plus), sigma_minus_(sigma_minus) {
  auto ok = [](double s) { return s >= 1e-150 && s <= 1e150; };
  if (!ok(sigma_plus) || !ok(sigma_minus))
    throw InvalidParameter("state widths must be positive and finite");
}

double GaussianTwoPhotonState::normalization_constant() const {
  return 1.0 / std::sqrt(std::numbers::pi * sigma_plus_ * sigma_minus_);
}

const MarginalSpec& GlobalMarginals::get(Variable v) const {
  switch (v) {
    case Variable::XPlus: return x_plus;
    case Variable::XMinus: return x_minus;
    case Variable::PPlus: return p_plus;
    case Variable::PMinus: return p_minus;
  }
  throw InvalidParameter("unknown variable");
}

GlobalMarginals exact_marginals(const GaussianTwoPhotonState& state) {
  const double sp = state.sigma_plus();
  const double sm = state.sigma_minus();
  return {
      {Variable::XPlus, 0.0, 1.0 / sp},
      {Variable::XMinus, 0.0, 1.0 / sm},
      {Variable::PPlus, 0.0, sp},
      {Variable::PMinus, 0.0, sm},
  };
}

IntervalMass bin_mass_oracle(const MarginalSpec& m) {
  if (!(m.std > 0.0)) throw InvalidParameter("marginal std must be positive");
  return [mean = m.mean, std = m.std](double a, double b) {
    if (a > b) throw InvalidParameter("interval lower end exceeds upper end");
    return normal_interval((a - mean) / std, (b - mean) / std);
  };
}

bool classify_separable(const GaussianTwoPhotonState& state) {
  const double a = state.sigma_plus();
  const double b = state.sigma_minus();
  return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

double bivariate_normal_rectangle(double a1, double b1, double a2, double b2, double s1,
                                  double s2, double rho) {
  if (a1 > b1 || a2 > b2) throw InvalidParameter("rectangle bounds out of order");
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw InvalidParameter("std must be positive");
  if (!(std::abs(rho) < 1.0 - 1e-12)) throw InvalidParameter("correlation too close to 1");
  // Reflect into the lower tails, where the CDF differences keep their
  // relative precision.
  if (a1 > 0.0) {
    std::tie(a1, b1) = std::pair(-b1, -a1);
    rho = -rho;
  }
  if (a2 > 0.0) {
    std::tie(a2, b2) = std::pair(-b2, -a2);
    rho = -rho;
  }
  const double h0 = a1 / s1, h1 = b1 / s1, k0 = a2 / s2, k1 = b2 / s2;
  const double mass = bivariate_normal_cdf(h1, k1, rho) - bivariate_normal_cdf(h0, k1, rho) -
                      bivariate_normal_cdf(h1, k0, rho) + bivariate_normal_cdf(h0, k0, rho);
  return std::max(0.0, mass);
}

namespace {

struct SinglePhoton {
  double std;
  double rho;
};

SinglePhoton single_photon(const GaussianTwoPhotonState& state, VariablePair pair) {
  const auto m = exact_marginals(state);
  const double vp = pair == VariablePair::Position ? m.x_plus.std * m.x_plus.std
                                                   : m.p_plus.std * m.p_plus.std;
  const double vm = pair == VariablePair::Position ? m.x_minus.std * m.x_minus.std
                                                   : m.p_minus.std * m.p_minus.std;
  return {0.5 * std::sqrt(vp + vm), (vp - vm) / (vp + vm)};
}

}  // namespace

std::vector<double> joint_cell_masses(const GaussianTwoPhotonState& state,
                                      const OpticalGeometry& geometry, VariablePair pair,
                                      ScanWindow window, double min_captured) {
  if (window.half_width < 0) throw InvalidParameter("scan half-width must be >= 0");
  const double w = detector_to_source_scale(geometry, pair);
  const auto photon = single_photon(state, pair);
  const int n = window.half_width;
  const std::size_t side = static_cast<std::size_t>(2 * n + 1);
  std::vector<double> masses(side * side);
  CompensatedSum captured;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const double m =
          bivariate_normal_rectangle((i - 0.5) * w, (i + 0.5) * w, (j - 0.5) * w,
                                     (j + 0.5) * w, photon.std, photon.std, photon.rho);
      masses[static_cast<std::size_t>(i + n) * side + static_cast<std::size_t>(j + n)] = m;
      captured += m;
    }
  }
  if (!(captured.value() >= min_captured)) {
    throw TruncationError("scan window captures only " + std::to_string(captured.value()) +
                              " of the joint probability",
                          captured.value());
  }
  return masses;
}

JointCounts sample_joint_counts(const GaussianTwoPhotonState& state,
                                const OpticalGeometry& geometry, VariablePair pair,
                                ScanWindow window, double total_expected_counts,
                                std::uint64_t seed) {
  if (!(total_expected_counts > 0.0) || !std::isfinite(total_expected_counts))
    throw InvalidParameter("expected total counts must be positive");
  const auto masses = joint_cell_masses(state, geometry, pair, window);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pair)};
  std::mt19937_64 rng(seq);
  std::vector<std::int64_t> counts(masses.size(), 0);
  for (std::size_t c = 0; c < masses.size(); ++c) {
    const double mean = total_expected_counts * masses[c];
    if (mean > 0.0) counts[c] = std::poisson_distribution<std::int64_t>(mean)(rng);
  }
  const std::size_t side = static_cast<std::size_t>(2 * window.half_width + 1);
  return JointCounts(pair, geometry.scan_step(pair), geometry, -window.half_width,
                     -window.half_width, side, side, std::move(counts));
}

ScanWindow auto_scan_window(const GaussianTwoPhotonState& state,
                            const OpticalGeometry& geometry, VariablePair pair,
                            double n_std) {
  const double w = detector_to_source_scale(geometry, pair);
  const double half = std::ceil(n_std * single_photon(state, pair).std / w);
  if (half > 5000) throw InvalidParameter("scan window would exceed 10001 detector steps");
  return {static_cast<int>(half)};
}

}  // namespace cgent
