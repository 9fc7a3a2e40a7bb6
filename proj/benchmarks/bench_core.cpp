#include <benchmark/benchmark.h>

#include "cgent/analysis.hpp"
#include "cgent/bound.hpp"
#include "cgent/commands.hpp"
#include "cgent/model.hpp"
#include "cgent/spheroidal.hpp"
#include "cgent/stats.hpp"

using namespace cgent;

namespace {

const cli::SimulatedScans& scans() {
  static const cli::SimulatedScans s = cli::simulate(cli::SimulateConfig{});
  return s;
}

void BM_RadialR00(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0)) / 8.0;
  for (auto _ : state) benchmark::DoNotOptimize(radial_r00(c, 1.0));
}
BENCHMARK(BM_RadialR00)->Arg(1)->Arg(16)->Arg(100);

void BM_BoundTableBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(BoundTable(200.0, 1.0 / 16.0));
}
BENCHMARK(BM_BoundTableBuild)->Unit(benchmark::kMillisecond);

void BM_BoundTableLookup(benchmark::State& state) {
  const auto& table = BoundTable::shared();
  double g = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table(g));
    g = g > 150.0 ? 0.0 : g + 0.37;
  }
}
BENCHMARK(BM_BoundTableLookup);

// Analytic masses and histogram statistics for a unit Gaussian; the
// argument is the number of bins per standard deviation.
void BM_CoarseGrainStats(benchmark::State& state) {
  const auto mass = bin_mass_oracle({Variable::XPlus, 0.0, 1.0});
  const BinGrid grid = BinGrid::covering(1.0 / static_cast<double>(state.range(0)), 12.0);
  for (auto _ : state) {
    const auto h = histogram_density(coarse_grain(mass, grid).distribution);
    benchmark::DoNotOptimize(histogram_variance(h) + histogram_entropy(h));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_CoarseGrainStats)->Arg(1)->Arg(10)->Arg(100);

void BM_EvaluateCell(benchmark::State& state) {
  const auto ms = extract_marginals(scans().position, scans().momentum);
  const int n = static_cast<int>(state.range(0));
  const std::vector<WitnessId> ids = {WitnessId::CoarseVariance, WitnessId::CoarseEntropic};
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_cell(prepare_cell(ms, {Pairing::PlusMinus, n, n}), ids));
}
BENCHMARK(BM_EvaluateCell)->Arg(1)->Arg(21);

void BM_FullSweep(benchmark::State& state) {
  const cli::SweepConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(cli::run_sweep(scans().position, scans().momentum, cfg));
}
BENCHMARK(BM_FullSweep)->Unit(benchmark::kMillisecond);

}  // namespace
