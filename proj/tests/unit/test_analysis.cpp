#include <gtest/gtest.h>

#include <cmath>

#include "cgent/analysis.hpp"
#include "cgent/error.hpp"
#include "cgent/stats.hpp"
#include "cgent/uncertainty.hpp"

using namespace cgent;

namespace {

// One detector row: x+ = i + j runs over {-1, 0, 1} with counts (a, b, c),
// and so does p- = i - j, reversed.
JointCounts toy_scan(VariablePair pair, std::int64_t a, std::int64_t b, std::int64_t c) {
  return JointCounts(pair, 0.05, {}, 0, -1, 1, 3, {a, b, c});
}

const std::vector<WitnessId> kAll = {WitnessId::MgvtContinuous, WitnessId::EntropicContinuous,
                                     WitnessId::CoarseVariance, WitnessId::CoarseEntropic,
                                     WitnessId::NaiveDiscrete};

}  // namespace

TEST(ExtractMarginals, ChecksScanKinds) {
  const auto pos = toy_scan(VariablePair::Position, 1, 2, 3);
  const auto mom = toy_scan(VariablePair::Momentum, 1, 2, 3);
  EXPECT_NO_THROW(extract_marginals(pos, mom));
  EXPECT_THROW(extract_marginals(mom, pos), ConfigError);
  EXPECT_THROW(extract_marginals(pos, pos), ConfigError);
  OpticalGeometry other;
  other.f3_mm = 300.0;
  const JointCounts mom2(VariablePair::Momentum, 0.02, other, 0, -1, 1, 3, {1, 2, 3});
  EXPECT_THROW(extract_marginals(pos, mom2), ConfigError);
}

TEST(PrepareCell, RebinsEachArm) {
  const auto pos = toy_scan(VariablePair::Position, 1, 2, 3);
  const auto mom = toy_scan(VariablePair::Momentum, 4, 5, 6);
  const auto ms = extract_marginals(pos, mom);
  EXPECT_EQ(ms.x_plus.counts, (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(ms.p_minus.counts, (std::vector<std::int64_t>{6, 5, 4}));
  const auto cell = prepare_cell(ms, {Pairing::PlusMinus, 3, 1});
  EXPECT_NEAR(cell.position.grid.width(), 0.075, 1e-15);
  EXPECT_EQ(cell.position.counts, (std::vector<std::int64_t>{6}));
  EXPECT_EQ(cell.momentum.counts, ms.p_minus.counts);
  EXPECT_THROW(prepare_cell(ms, {Pairing::PlusMinus, 2, 1}), InvalidParameter);
}

TEST(EvaluateCell, MatchesDirectWitnesses) {
  const auto pos = toy_scan(VariablePair::Position, 10, 30, 20);
  const auto mom = toy_scan(VariablePair::Momentum, 5, 40, 15);
  const auto ms = extract_marginals(pos, mom);
  const auto reports = evaluate_cell(prepare_cell(ms, {Pairing::PlusMinus, 1, 1}), kAll);
  ASSERT_EQ(reports.size(), kAll.size());
  const MarginalDistribution r{Variable::XPlus, DiscreteDistribution::from_counts(ms.x_plus)};
  const MarginalDistribution s{Variable::PMinus, DiscreteDistribution::from_counts(ms.p_minus)};
  const MarginalHistogram rh{r.variable, histogram_density(r.distribution)};
  const MarginalHistogram sh{s.variable, histogram_density(s.distribution)};
  EXPECT_NEAR(reports[2].value, coarse_variance_witness(rh, sh).value, 1e-14);
  EXPECT_NEAR(reports[3].value, coarse_entropic_witness(rh, sh).value, 1e-14);
  EXPECT_NEAR(reports[4].value, naive_discrete_witness(r, s).value, 1e-14);
  EXPECT_NEAR(reports[0].value, reports[2].value, 1e-14);
  EXPECT_TRUE(reports[4].unsafe);
  for (const auto& w : reports) EXPECT_EQ(w.pairing, Pairing::PlusMinus);
}

TEST(MarginalStats, MovedCenters) {
  const CountHistogram h(BinGrid(1.0, -1, 1), {1, 2, 1});
  const std::vector<double> off{0.1, 0.0, -0.2};
  const auto st = marginal_stats(h, off);
  const std::vector<double> p{0.25, 0.5, 0.25}, x{-0.9, 0.0, 0.8};
  double mean = 0, second = 0;
  for (int k = 0; k < 3; ++k) {
    mean += p[k] * x[k];
    second += p[k] * x[k] * x[k];
  }
  EXPECT_NEAR(st.discrete_variance, second - mean * mean, 1e-15);
  EXPECT_NEAR(st.histogram_variance, st.discrete_variance + 1.0 / 12.0, 1e-15);
  // Widths from midpoints: 0.95, 0.85, 0.9.
  const double h_expected = -(0.25 * std::log(0.25 / 0.95) + 0.5 * std::log(0.5 / 0.85) +
                              0.25 * std::log(0.25 / 0.9));
  EXPECT_NEAR(st.histogram_entropy, h_expected, 1e-14);
  EXPECT_THROW(marginal_stats(h, std::vector<double>{0.0}), InvalidParameter);
}

TEST(MarginalStats, NoOffsetsMatchesHistogramStatistics) {
  const CountHistogram h(BinGrid(0.3, -2, 2), {3, 0, 7, 1, 4});
  const auto st = marginal_stats(h);
  const auto d = histogram_density(DiscreteDistribution::from_counts(h));
  EXPECT_NEAR(st.histogram_variance, histogram_variance(d), 1e-15);
  EXPECT_NEAR(st.histogram_entropy, histogram_entropy(d), 1e-15);
  EXPECT_DOUBLE_EQ(st.width, 0.3);
}

TEST(CenterSigma, DefaultGeometry) {
  const OpticalGeometry g;
  EXPECT_NEAR(position_center_sigma(g, 1), 0.01 * std::sqrt(2.0) * 0.25, 1e-15);
  EXPECT_NEAR(position_center_sigma(g, 5), 5.0 * position_center_sigma(g, 1), 1e-15);
  EXPECT_NEAR(momentum_center_sigma(g, 3),
              0.01 * std::sqrt(2.0) * 6.0 * M_PI / (250.0 * 650e-6), 1e-12);
}

class Propagation : public ::testing::Test {
 protected:
  JointCounts pos = toy_scan(VariablePair::Position, 2000, 6000, 2000);
  JointCounts mom = toy_scan(VariablePair::Momentum, 1500, 7000, 1500);
  std::vector<CellConfig> cells = {{Pairing::PlusMinus, 1, 1}, {Pairing::MinusPlus, 1, 1}};
  std::vector<WitnessId> ids = {WitnessId::CoarseVariance, WitnessId::CoarseEntropic};
};

TEST_F(Propagation, ZeroWithoutNoise) {
  ErrorModel em = ErrorModel::poisson_only(1);
  em.poisson = false;
  const auto res = propagate(pos, mom, cells, ids, em);
  for (const auto& cell : res.reports)
    for (const auto& r : cell) EXPECT_EQ(r.uncertainty, 0.0);
  EXPECT_EQ(res.replicates_used, 1000);
}

TEST_F(Propagation, RigidShiftLeavesVarianceAlone) {
  ErrorModel em = ErrorModel::from_geometry(pos.geometry(), 4);
  em.poisson = false;
  em.jitter = JitterMode::Rigid;
  em.replicates = 200;
  const auto res = propagate(pos, mom, cells, ids, em);
  EXPECT_LT(*res.reports[0][0].uncertainty, 1e-12);
  EXPECT_LT(*res.reports[0][1].uncertainty, 1e-12);
}

TEST_F(Propagation, DeterministicForSeed) {
  const ErrorModel em = ErrorModel::from_geometry(pos.geometry(), 77);
  const auto a = propagate(pos, mom, cells, ids, em);
  const auto b = propagate(pos, mom, cells, ids, em);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t w = 0; w < ids.size(); ++w) {
      EXPECT_EQ(a.reports[c][w].uncertainty, b.reports[c][w].uncertainty);
      EXPECT_GT(*a.reports[c][w].uncertainty, 0.0);
    }
}

TEST_F(Propagation, PoissonMatchesDeltaMethod) {
  // First-order propagation of the discrete variance with independent
  // Poisson counts: Var(V) = sum_k N_k ((x_k - mu)^2 - V)^2 / N^2.
  auto var_of_variance = [](const CountHistogram& h, double& v) {
    const auto d = DiscreteDistribution::from_counts(h);
    v = discrete_variance(d);
    double mu = 0.0;
    for (int j = h.grid.j_min(); j <= h.grid.j_max(); ++j) mu += d.mass(j) * h.grid.center(j);
    const double n = static_cast<double>(h.total());
    double acc = 0.0;
    for (int j = h.grid.j_min(); j <= h.grid.j_max(); ++j) {
      const double t = std::pow(h.grid.center(j) - mu, 2) - v;
      acc += static_cast<double>(h.at(j)) * t * t;
    }
    return acc / (n * n);
  };
  const auto ms = extract_marginals(pos, mom);
  double vr = 0, vs = 0;
  const double var_r = var_of_variance(ms.x_plus, vr);
  const double var_s = var_of_variance(ms.p_minus, vs);
  const double a = vr + std::pow(ms.x_plus.grid.width(), 2) / 12.0;
  const double b = vs + std::pow(ms.p_minus.grid.width(), 2) / 12.0;
  const double delta = std::sqrt(b * b * var_r + a * a * var_s);

  const std::vector<CellConfig> one = {{Pairing::PlusMinus, 1, 1}};
  const std::vector<WitnessId> var_only = {WitnessId::CoarseVariance};
  const auto res = propagate(pos, mom, one, var_only, ErrorModel::poisson_only(2024));
  EXPECT_NEAR(*res.reports[0][0].uncertainty / delta, 1.0, 0.2);
}

TEST_F(Propagation, ReplicateFloor) {
  ErrorModel em = ErrorModel::poisson_only(1);
  em.replicates = 50;
  EXPECT_THROW(propagate(pos, mom, cells, ids, em), InvalidParameter);
  em.fast_mode = true;
  EXPECT_NO_THROW(propagate(pos, mom, cells, ids, em));
}

TEST_F(Propagation, SparseDataIsRejected) {
  // A single count resamples to zero about 37% of the time.
  const auto thin = toy_scan(VariablePair::Position, 0, 1, 0);
  EXPECT_THROW(propagate(thin, mom, cells, ids, ErrorModel::poisson_only(3)), PropagationError);
}
