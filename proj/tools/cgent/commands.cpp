#include "cgent/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "json.hpp"

#include "cgent/analysis.hpp"
#include "cgent/bound.hpp"
#include "cgent/error.hpp"
#include "cgent/stats.hpp"
#include "cgent/uncertainty.hpp"

namespace cgent::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Rows with a null uncertainty print an empty CSV field.
void write_csv_row(std::ostream& out, std::string_view section, const SweepRow& r) {
  out << section << ',' << r.n << ',' << r.m << ',' << to_string(r.pairing) << ','
      << to_string(r.witness) << ',' << format_number(r.value) << ','
      << (r.uncertainty ? format_number(*r.uncertainty) : std::string()) << ','
      << (r.detected ? "true" : "false") << '\n';
}

ordered_json row_json(const SweepRow& r) {
  ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["pairing"] = std::string(to_string(r.pairing));
  j["witness"] = std::string(to_string(r.witness));
  j["value"] = r.value;
  j["uncertainty"] = r.uncertainty ? ordered_json(*r.uncertainty) : ordered_json(nullptr);
  j["detected"] = r.detected;
  return j;
}

ordered_json report_json(const WitnessReport& w) {
  ordered_json j;
  j["witness"] = std::string(to_string(w.id));
  j["value"] = w.value;
  j["position_statistic"] = w.position_statistic;
  j["momentum_statistic"] = w.momentum_statistic;
  j["detected"] = w.detected();
  if (w.unsafe) j["unsafe"] = "can yield false positives";
  return j;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<int> default_factors() {
  std::vector<int> f;
  for (int k = 1; k <= 21; k += 2) f.push_back(k);
  return f;
}

void SweepConfig::validate() const {
  auto check = [](const std::vector<int>& v, const char* name) {
    if (v.empty()) throw ConfigError(std::string(name) + " is empty");
    for (int k : v) {
      if (k < 1 || k % 2 == 0)
        throw ConfigError(std::string(name) + " entries must be odd and positive, got " +
                          std::to_string(k));
    }
  };
  check(n_values, "n list");
  check(m_values, "m list");
  if (pairings.empty()) throw ConfigError("no pairing selected");
  if (witnesses.empty()) throw ConfigError("no witness selected");
  if (errors && replicates < 100 && !fast_mode)
    throw ConfigError("at least 100 replicates are required");
  if (!(detection_sigma >= 0.0)) throw ConfigError("detection threshold must be >= 0");
}

SweepResult run_sweep(const JointCounts& position, const JointCounts& momentum,
                      const SweepConfig& config) {
  config.validate();
  std::vector<CellConfig> cells;
  for (auto p : config.pairings)
    for (int n : config.n_values)
      for (int m : config.m_values) cells.push_back({p, n, m});

  const BoundTable& table = BoundTable::shared();
  const BoundFunction bound = [&table](double g) { return table(g); };

  std::vector<std::vector<WitnessReport>> reports;
  if (config.errors) {
    ErrorModel model = ErrorModel::from_geometry(position.geometry(), config.seed);
    model.replicates = config.replicates;
    model.fast_mode = config.fast_mode;
    reports = propagate(position, momentum, cells, config.witnesses, model, bound).reports;
  } else {
    const MarginalSet marginals = extract_marginals(position, momentum);
    reports.reserve(cells.size());
    for (const auto& c : cells)
      reports.push_back(evaluate_cell(prepare_cell(marginals, c), config.witnesses, bound));
  }

  SweepResult result;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& w : reports[c]) {
      SweepRow row{cells[c].n,      cells[c].m,    cells[c].pairing,
                   w.id,            w.value,       w.uncertainty,
                   w.detected(config.detection_sigma)};
      result.grid.push_back(row);
      if (row.n == row.m) result.diagonal.push_back(row);
    }
  }
  return result;
}

void write_sweep(std::ostream& out, const SweepResult& result, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << "section,n,m,pairing,witness,value,uncertainty,detected\n";
    for (const auto& r : result.grid) write_csv_row(out, "grid", r);
    for (const auto& r : result.diagonal) write_csv_row(out, "diagonal", r);
    return;
  }
  ordered_json j;
  j["grid"] = ordered_json::array();
  for (const auto& r : result.grid) j["grid"].push_back(row_json(r));
  j["diagonal"] = ordered_json::array();
  for (const auto& r : result.diagonal) j["diagonal"].push_back(row_json(r));
  out << j.dump(2) << '\n';
}

SimulatedScans simulate(const SimulateConfig& config) {
  const GaussianTwoPhotonState state(config.sigma_plus, config.sigma_minus);
  auto window = [&](VariablePair pair) {
    if (config.half_width) {
      if (*config.half_width < 0) throw ConfigError("half width must be >= 0");
      return ScanWindow{*config.half_width};
    }
    return auto_scan_window(state, config.geometry, pair);
  };
  return {
      sample_joint_counts(state, config.geometry, VariablePair::Position,
                          window(VariablePair::Position), config.total_counts, config.seed),
      sample_joint_counts(state, config.geometry, VariablePair::Momentum,
                          window(VariablePair::Momentum), config.total_counts, config.seed),
  };
}

std::pair<std::filesystem::path, std::filesystem::path> write_simulation(
    const std::filesystem::path& prefix, const SimulatedScans& scans) {
  std::filesystem::path pos = prefix;
  pos += ".position.txt";
  std::filesystem::path mom = prefix;
  mom += ".momentum.txt";
  save_joint_counts(pos, scans.position);
  save_joint_counts(mom, scans.momentum);
  return {pos, mom};
}

DemoReport run_false_positive_demo(const DemoConfig& config) {
  if (config.sigma_minus && *config.sigma_minus != config.sigma)
    throw InvalidParameter("the demonstration needs a separable state (sigma+ == sigma-)");
  if (!(config.multiplier > 0.0) || !std::isfinite(config.multiplier))
    throw InvalidParameter("bin width multiplier must be positive");
  if (!config.analytic && !(config.total_counts >= 1.0))
    throw InvalidParameter("total counts must be >= 1");

  const GaussianTwoPhotonState state(config.sigma, config.sigma);
  const auto marg = exact_marginals(state);
  const MarginalSpec& r = marg.x_plus;
  const MarginalSpec& s = marg.p_minus;
  const BinWidths widths{config.multiplier * r.std, config.multiplier * s.std};

  std::mt19937_64 rng(config.seed);
  auto distribution = [&](const MarginalSpec& spec, double width) {
    const BinGrid grid = BinGrid::covering(width, std::max(12.0 * spec.std, 2.0 * width));
    auto cg = coarse_grain(bin_mass_oracle(spec), grid);
    if (config.analytic) return cg.distribution;
    std::vector<std::int64_t> counts(grid.size(), 0);
    const auto masses = cg.distribution.masses();
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double mean = config.total_counts * masses[k];
      if (mean > 0.0) counts[k] = std::poisson_distribution<std::int64_t>(mean)(rng);
    }
    return DiscreteDistribution::from_counts(CountHistogram(grid, std::move(counts)));
  };

  const MarginalDistribution rd{r.variable, distribution(r, widths.position)};
  const MarginalDistribution sd{s.variable, distribution(s, widths.momentum)};
  const MarginalHistogram rh{r.variable, histogram_density(rd.distribution)};
  const MarginalHistogram sh{s.variable, histogram_density(sd.distribution)};

  return {config, widths, naive_discrete_witness(rd, sd), coarse_variance_witness(rh, sh),
          coarse_entropic_witness(rh, sh)};
}

void write_demo(std::ostream& out, const DemoReport& report, OutputFormat format) {
  const std::array<const WitnessReport*, 3> rows = {&report.naive, &report.coarse_variance,
                                                    &report.coarse_entropic};
  if (format == OutputFormat::Csv) {
    out << "# separable Gaussian sigma+=sigma-=" << format_number(report.config.sigma)
        << ", bin widths " << format_number(report.config.multiplier) << "x marginal std"
        << (report.config.analytic ? ", exact masses" : ", sampled counts") << '\n';
    out << "witness,value,detected,note\n";
    for (const auto* w : rows) {
      out << to_string(w->id) << ',' << format_number(w->value) << ','
          << (w->detected() ? "true" : "false") << ','
          << (w->unsafe ? (w->detected() ? "unsafe: FALSE POSITIVE" : "unsafe")
                        : "")
          << '\n';
    }
    return;
  }
  ordered_json j;
  j["sigma"] = report.config.sigma;
  j["multiplier"] = report.config.multiplier;
  j["analytic"] = report.config.analytic;
  j["position_width"] = report.widths.position;
  j["momentum_width"] = report.widths.momentum;
  j["witnesses"] = ordered_json::array();
  for (const auto* w : rows) j["witnesses"].push_back(report_json(*w));
  out << j.dump(2) << '\n';
}

void BoundTableConfig::validate() const {
  if (!(gamma_min >= 0.0) || !std::isfinite(gamma_max) || !(gamma_max > gamma_min))
    throw ConfigError("need 0 <= gamma-min < gamma-max");
  if (points < 2) throw ConfigError("need at least 2 points");
  if (log_spacing && !(gamma_min > 0.0)) throw ConfigError("log spacing needs gamma-min > 0");
}

void write_bound_table(std::ostream& out, const BoundTableConfig& config) {
  config.validate();
  out << "gamma,C\n";
  const double steps = config.points - 1;
  for (int k = 0; k < config.points; ++k) {
    const double t = k / steps;
    double g = config.log_spacing
                   ? config.gamma_min * std::pow(config.gamma_max / config.gamma_min, t)
                   : config.gamma_min + t * (config.gamma_max - config.gamma_min);
    if (k == config.points - 1) g = config.gamma_max;
    out << format_number(g) << ',' << format_number(coarse_bound_c(g)) << '\n';
  }
}

}  // namespace cgent::cli
