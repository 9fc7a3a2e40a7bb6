#include "cgent/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "cgent/error.hpp"
#include "cgent/numeric.hpp"

namespace cgent {

double position_center_sigma(const OpticalGeometry& g, int n) {
  return g.micrometer_step_mm * std::numbers::sqrt2 * n * (g.f1_mm / g.f2_mm);
}

double momentum_center_sigma(const OpticalGeometry& g, int m) {
  return g.micrometer_step_mm * std::numbers::sqrt2 *
         (2.0 * m * std::numbers::pi / (g.f3_mm * g.lambda_mm));
}

ErrorModel ErrorModel::from_geometry(const OpticalGeometry& g, std::uint64_t seed) {
  ErrorModel em;
  em.position_sigma = [g](int n) { return position_center_sigma(g, n); };
  em.momentum_sigma = [g](int m) { return momentum_center_sigma(g, m); };
  em.seed = seed;
  return em;
}

ErrorModel ErrorModel::poisson_only(std::uint64_t seed) {
  ErrorModel em;
  em.seed = seed;
  return em;
}

namespace {

std::vector<std::int64_t> poisson_resample(std::span<const std::int64_t> counts,
                                           std::mt19937_64& rng) {
  std::vector<std::int64_t> out(counts.size(), 0);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0)
      out[k] = std::poisson_distribution<std::int64_t>(static_cast<double>(counts[k]))(rng);
  }
  return out;
}

std::vector<double> draw_offsets(std::size_t bins, double sigma, JitterMode mode,
                                 std::mt19937_64& rng) {
  std::vector<double> out(bins, 0.0);
  if (!(sigma > 0.0)) return out;
  std::normal_distribution<double> normal(0.0, sigma);
  if (mode == JitterMode::Rigid) {
    std::fill(out.begin(), out.end(), normal(rng));
  } else {
    for (double& x : out) x = normal(rng);
  }
  return out;
}

}  // namespace

PropagationResult propagate(const JointCounts& position, const JointCounts& momentum,
                            std::span<const CellConfig> cells,
                            std::span<const WitnessId> witnesses, const ErrorModel& model,
                            const BoundFunction& bound) {
  if (model.replicates < 1) throw InvalidParameter("replicates must be positive");
  if (model.replicates < 100 && !model.fast_mode)
    throw InvalidParameter("reported errors need at least 100 replicates");

  const auto nominal_marginals = extract_marginals(position, momentum);
  PropagationResult result;
  for (const auto& cell : cells)
    result.reports.push_back(evaluate_cell(prepare_cell(nominal_marginals, cell), witnesses, bound));

  const std::size_t per_rep = cells.size() * witnesses.size();
  const auto reps = static_cast<std::size_t>(model.replicates);
  std::vector<double> values(reps * per_rep, 0.0);
  std::vector<char> valid(reps, 0);

  auto run_replicate = [&](std::size_t rep) {
    std::seed_seq seq{static_cast<std::uint32_t>(model.seed),
                      static_cast<std::uint32_t>(model.seed >> 32),
                      static_cast<std::uint32_t>(rep), 0x5eedu};
    std::mt19937_64 rng(seq);
    auto pos = position;
    auto mom = momentum;
    if (model.poisson) {
      pos = position.with_counts(poisson_resample(position.counts(), rng));
      mom = momentum.with_counts(poisson_resample(momentum.counts(), rng));
    }
    if (pos.total() == 0 || mom.total() == 0) return;
    const auto marginals = extract_marginals(pos, mom);
    std::size_t slot = rep * per_rep;
    for (const auto& cell : cells) {
      const auto prepared = prepare_cell(marginals, cell);
      const double sx = model.position_sigma ? model.position_sigma(cell.n) : 0.0;
      const double sp = model.momentum_sigma ? model.momentum_sigma(cell.m) : 0.0;
      const auto dx = draw_offsets(prepared.position.grid.size(), sx, model.jitter, rng);
      const auto dp = draw_offsets(prepared.momentum.grid.size(), sp, model.jitter, rng);
      const auto reports = evaluate_cell(prepared, witnesses, bound, dx, dp);
      for (const auto& r : reports) values[slot++] = r.value;
    }
    valid[rep] = 1;
  };

  const std::size_t n_threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, reps));
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t rep = t; rep < reps; rep += n_threads) run_replicate(rep);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  const auto used = static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1));
  result.replicates_used = static_cast<int>(used);
  result.replicates_discarded = static_cast<int>(reps - used);
  if (static_cast<double>(reps - used) > 0.1 * static_cast<double>(reps))
    throw PropagationError("more than 10% of replicates had no counts");
  if (used < 2) throw PropagationError("fewer than two usable replicates");

  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      const std::size_t idx = c * witnesses.size() + w;
      CompensatedSum mean_acc;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        if (!valid[rep]) continue;
        const double v = values[rep * per_rep + idx];
        mean_acc += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (lo == hi) {
        result.reports[c][w].uncertainty = 0.0;
        continue;
      }
      const double mean = mean_acc.value() / static_cast<double>(used);
      CompensatedSum var_acc;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        if (!valid[rep]) continue;
        const double d = values[rep * per_rep + idx] - mean;
        var_acc += d * d;
      }
      result.reports[c][w].uncertainty = std::sqrt(var_acc.value() / static_cast<double>(used - 1));
    }
  }
  return result;
}

}  // namespace cgent
