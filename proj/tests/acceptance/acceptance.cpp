// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero on any
// failure except criterion 5, whose stated premise does not hold (see the
// line it prints).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "cgent/bound.hpp"
#include "cgent/commands.hpp"
#include "cgent/ingest.hpp"
#include "cgent/model.hpp"
#include "cgent/spheroidal.hpp"
#include "cgent/stats.hpp"
#include "cgent/uncertainty.hpp"
#include "cgent/witness.hpp"
#include "oracles.hpp"

using namespace cgent;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, bool expected_fail, Outcome (*check)()) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!o.pass && !expected_fail) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

MarginalDistribution analytic(const MarginalSpec& m, double width) {
  const BinGrid grid = BinGrid::covering(width, std::max(12.0 * m.std, 2.0 * width));
  return {m.variable, coarse_grain(bin_mass_oracle(m), grid).distribution};
}

MarginalHistogram as_histogram(const MarginalDistribution& d) {
  return {d.variable, histogram_density(d.distribution)};
}

Outcome base_widths() {
  const OpticalGeometry g;
  const double dx = detector_to_source_scale(g, VariablePair::Position);
  const double dp = detector_to_source_scale(g, VariablePair::Momentum);
  const bool ok = std::abs(dx / 0.0250 - 1.0) < 5e-4 && std::abs(dp / 1.546 - 1.0) < 5e-4;
  return {ok, "Delta1=" + fmt("%.6f", dx) + " mm, delta1=" + fmt("%.6f", dp) + " /mm"};
}

Outcome correction_identities() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 50), start(-40, 20);
  double worst_identity = 0.0, worst_quad = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double w = std::exp(std::log(1e-3) + u(rng) * std::log(1e5));
    const int j0 = start(rng);
    const int n = len(rng);
    std::vector<double> weights(n);
    for (auto& x : weights) x = u(rng) < 0.25 ? 0.0 : u(rng);
    weights[n / 2] += 0.05;
    const auto d = DiscreteDistribution::normalized(BinGrid(w, j0, j0 + n - 1), weights);
    const auto h = histogram_density(d);
    const double hv = histogram_variance(h), he = histogram_entropy(h);
    const double scale = std::max(1.0, hv);
    worst_identity = std::max({worst_identity,
                               std::abs(hv - discrete_variance(d) - w * w / 12.0) / scale,
                               std::abs(he - discrete_entropy(d) - std::log(w))});
    const auto q = oracle::piecewise_density_quadrature(
        std::vector<double>(d.masses().begin(), d.masses().end()), j0, w);
    worst_quad =
        std::max({worst_quad, std::abs(hv - q.variance) / scale, std::abs(he - q.entropy)});
  }
  return {worst_identity <= 1e-10 && worst_quad <= 1e-8,
          "200 distributions, identity err " + fmt("%.2e", worst_identity) + ", quadrature err " +
              fmt("%.2e", worst_quad)};
}

Outcome continuous_limit() {
  const auto m = exact_marginals(GaussianTwoPhotonState(2.0, 0.5));
  const auto r = as_histogram(analytic(m.x_plus, 1e-2 * m.x_plus.std));
  const auto s = as_histogram(analytic(m.p_minus, 1e-2 * m.p_minus.std));
  const double v = coarse_variance_witness(r, s).value;
  const double e = coarse_entropic_witness(r, s).value;
  const double rv = std::abs(v / (-15.0 / 16.0) - 1.0);
  const double re = std::abs(e / -std::log(4.0) - 1.0);
  return {rv <= 1e-3 && re <= 1e-3, "variance " + fmt("%.7f", v) + " (rel " + fmt("%.1e", rv) +
                                        "), entropic " + fmt("%.7f", e) + " (rel " +
                                        fmt("%.1e", re) + ")"};
}

Outcome reliability() {
  double min_v = INFINITY, min_e = INFINITY;
  int cells = 0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto m = exact_marginals(GaussianTwoPhotonState(sigma, sigma));
    for (int a = 0; a < 12; ++a) {
      const double fr = std::pow(10.0, -2.0 + 3.0 * a / 11.0);
      const auto r = as_histogram(analytic(m.x_plus, fr * m.x_plus.std));
      for (int b = 0; b < 12; ++b) {
        const double fs = std::pow(10.0, -2.0 + 3.0 * b / 11.0);
        const auto s = as_histogram(analytic(m.p_minus, fs * m.p_minus.std));
        min_v = std::min(min_v, coarse_variance_witness(r, s).value);
        min_e = std::min(min_e, coarse_entropic_witness(r, s).value);
        ++cells;
      }
    }
  }
  return {min_v >= 0.0 && min_e >= 0.0, std::to_string(cells) + " cells, min variance " +
                                            fmt("%.3e", min_v) + ", min entropic " +
                                            fmt("%.3e", min_e)};
}

Outcome false_positive() {
  const auto m = exact_marginals(GaussianTwoPhotonState(1.0, 1.0));
  auto at = [&](double mult) {
    const auto r = analytic(m.x_plus, mult * m.x_plus.std);
    const auto s = analytic(m.p_minus, mult * m.p_minus.std);
    return std::pair{naive_discrete_witness(r, s).value,
                     coarse_variance_witness(as_histogram(r), as_histogram(s)).value};
  };
  const auto [naive3, coarse3] = at(3.0);
  const auto [naive4, coarse4] = at(4.0);
  boost::uintmax_t iters = 100;
  const auto root = boost::math::tools::toms748_solve(
      [&](double k) { return at(k).first; }, 3.0, 4.0,
      boost::math::tools::eps_tolerance<double>(40), iters);
  const double threshold = 0.5 * (root.first + root.second);
  const bool ok = naive3 < 0.0 && coarse3 >= 0.0;
  std::string detail = "at 3x std naive " + fmt("%+.6f", naive3) + ", coarse variance " +
                       fmt("%+.6f", coarse3);
  if (!ok)
    detail += "; premise does not hold: naive turns negative only above " +
              fmt("%.6f", threshold) + "x std, at 4x naive " + fmt("%+.6f", naive4) +
              " while coarse variance " + fmt("%+.6f", coarse4);
  return {ok, detail};
}

Outcome entropic_beats_variance() {
  std::string detail;
  bool all_ge = true, some_gt = false;
  for (double ratio : {2.0, 4.0, 8.0}) {
    cli::SimulateConfig sc;
    const double base = detector_to_source_scale(sc.geometry, VariablePair::Momentum) /
                        detector_to_source_scale(sc.geometry, VariablePair::Position);
    sc.sigma_plus = std::sqrt(ratio * base);
    sc.sigma_minus = sc.sigma_plus / ratio;
    sc.total_counts = 1e6;
    sc.seed = 100 + static_cast<int>(ratio);
    const auto scans = cli::simulate(sc);
    cli::SweepConfig cfg;
    cfg.pairings = {Pairing::PlusMinus};
    int max_v = 0, max_e = 0;
    for (int n : cli::default_factors()) {
      cfg.n_values = cfg.m_values = {n};
      for (const auto& row : cli::run_sweep(scans.position, scans.momentum, cfg).grid) {
        if (!row.detected) continue;
        (row.witness == WitnessId::CoarseVariance ? max_v : max_e) = n;
      }
    }
    all_ge &= max_e >= max_v;
    some_gt |= max_e > max_v;
    if (!detail.empty()) detail += "; ";
    detail += "ratio " + fmt("%g", ratio) + ": max n variance " + std::to_string(max_v) +
              ", entropic " + std::to_string(max_e);
  }
  return {all_ge && some_gt, detail};
}

Outcome bound_certification() {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double gamma = std::pow(10.0, -3.0 + 5.0 * k / 199.0);
    const double c = gamma / 8.0;
    worst = std::max(worst, std::abs(radial_r00(c, 1.0) - oracle::prolate_shooting(c).r00));
  }
  // Shape of C on a uniform grid, and its largest slope at two resolutions
  // as a continuity check.
  auto shape = [](int points, int& switches, bool& positive, bool& capped, double& slope) {
    switches = 0;
    positive = capped = true;
    slope = 0.0;
    const double h = 100.0 / (points - 1);
    double prev = coarse_bound_c(0.0);
    bool prev_fine = prev == kFineBinBound;
    for (int k = 1; k < points; ++k) {
      const double v = coarse_bound_c(k * h);
      const bool fine = v == kFineBinBound;
      positive &= v > 0.0;
      capped &= v <= kFineBinBound;
      switches += fine != prev_fine;
      slope = std::max(slope, std::abs(v - prev) / h);
      prev = v;
      prev_fine = fine;
    }
  };
  int sw1, sw2;
  bool pos1, pos2, cap1, cap2;
  double slope1, slope2;
  shape(2001, sw1, pos1, cap1, slope1);
  shape(8001, sw2, pos2, cap2, slope2);
  const double c0 = coarse_bound_c(0.0);
  const bool initial = coarse_bound_c(0.0) == kFineBinBound &&
                       coarse_bound_c(0.5 * crossover_gamma()) == kFineBinBound;
  const bool ok = worst <= 1e-8 && pos1 && pos2 && cap1 && cap2 && sw1 == 1 && sw2 == 1 &&
                  slope2 <= 1.01 * slope1 && initial && std::abs(c0 - 0.0585498) < 5e-8;
  return {ok, "R00 dual-route err " + fmt("%.2e", worst) + ", C(0)=" + fmt("%.7f", c0) +
                  ", switches " + std::to_string(sw2) + " at gamma " +
                  fmt("%.6f", crossover_gamma()) + ", max slope " + fmt("%.4f", slope2)};
}

Outcome statistical_scaling() {
  auto relative = [](double total) {
    cli::SimulateConfig sc;
    sc.total_counts = total;
    sc.seed = 21;
    const auto scans = cli::simulate(sc);
    const std::vector<CellConfig> cell = {{Pairing::PlusMinus, 1, 1}};
    const std::vector<WitnessId> ids = {WitnessId::CoarseVariance};
    const auto res = propagate(scans.position, scans.momentum, cell, ids,
                               ErrorModel::poisson_only(2024));
    const auto& r = res.reports[0][0];
    return *r.uncertainty / std::abs(r.value);
  };
  const double small = relative(1e4), large = relative(1e6);
  const double factor = small / large;
  return {factor >= 8.0 && factor <= 12.0, "relative uncertainty " + fmt("%.3e", small) +
                                               " at 1e4 counts, " + fmt("%.3e", large) +
                                               " at 1e6, factor " + fmt("%.2f", factor)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "cgent_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> runs;
  for (int run = 0; run < 2; ++run) {
    const auto prefix = dir / ("run" + std::to_string(run));
    cli::SimulateConfig sc;
    sc.seed = 31;
    const auto [pos_path, mom_path] = cli::write_simulation(prefix, cli::simulate(sc));
    const auto pos = load_joint_counts(pos_path);
    const auto mom = load_joint_counts(mom_path);
    cli::SweepConfig cfg;
    cfg.seed = 31;
    std::ostringstream out;
    cli::write_sweep(out, cli::run_sweep(pos, mom, cfg), cli::OutputFormat::Csv);
    cfg.errors = true;
    cfg.n_values = cfg.m_values = {1, 5, 9};
    cli::write_sweep(out, cli::run_sweep(pos, mom, cfg), cli::OutputFormat::Json);
    runs.push_back(slurp(pos_path) + slurp(mom_path) + out.str());
  }
  std::filesystem::remove_all(dir);
  return {runs[0] == runs[1], "two runs of " + std::to_string(runs[0].size()) + " bytes " +
                                  (runs[0] == runs[1] ? "identical" : "differ")};
}

}  // namespace

int main() {
  report(1, "unit-conversion anchors", false, base_widths);
  report(2, "correction identities", false, correction_identities);
  report(3, "continuous-limit recovery", false, continuous_limit);
  report(4, "reliability on separable states", false, reliability);
  report(5, "false-positive demonstration", true, false_positive);
  report(6, "entropic beats variance", false, entropic_beats_variance);
  report(7, "bound self-certification", false, bound_certification);
  report(8, "statistical scaling", false, statistical_scaling);
  report(9, "determinism", false, determinism);
  return failures == 0 ? 0 : 1;
}
