#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cgent/commands.hpp"
#include "cgent/error.hpp"
#include "cgent/ingest.hpp"

namespace {

using namespace cgent;
using namespace cgent::cli;

const std::map<std::string, OutputFormat> kFormats = {{"csv", OutputFormat::Csv},
                                                      {"json", OutputFormat::Json}};
const std::map<std::string, bool> kOnOff = {{"on", true}, {"off", false}};

struct Common {
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string output = "-";
  bool errors = false;
  int replicates = 1000;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("csv");
  cmd->add_option("--output", c.output, "Output path ('-' for stdout)")->capture_default_str();
  cmd->add_option("--errors", c.errors, "Propagate Poisson and bin-center errors")
      ->transform(CLI::CheckedTransformer(kOnOff, CLI::ignore_case))
      ->default_str("off");
  cmd->add_option("--replicates", c.replicates, "Monte Carlo replicates")
      ->capture_default_str();
}

void add_geometry(CLI::App* cmd, OpticalGeometry& g) {
  cmd->add_option("--f1-mm,--f1_mm", g.f1_mm)->capture_default_str();
  cmd->add_option("--f2-mm,--f2_mm", g.f2_mm)->capture_default_str();
  cmd->add_option("--f3-mm,--f3_mm", g.f3_mm)->capture_default_str();
  cmd->add_option("--lambda-mm,--lambda_mm", g.lambda_mm)->capture_default_str();
  cmd->add_option("--s-x-mm,--s_x_mm", g.s_x_mm)->capture_default_str();
  cmd->add_option("--s-p-mm,--s_p_mm", g.s_p_mm)->capture_default_str();
  cmd->add_option("--micrometer-step-mm,--micrometer_step_mm", g.micrometer_step_mm)
      ->capture_default_str();
}

template <class F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  write(out);
  if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse-grained entanglement witnesses for two-photon spatial data"};
  app.require_subcommand(0, 1);

  std::string dump_path;
  app.add_option("--dump-bound-table", dump_path,
                 "Write gamma,C(gamma) on [0, 100] to PATH ('-' for stdout) and exit");

  Common common;

  SimulateConfig sim;
  std::string sim_prefix;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate position and momentum scans");
  add_common(simulate_cmd, common);
  add_geometry(simulate_cmd, sim.geometry);
  simulate_cmd->add_option("--sigma-plus", sim.sigma_plus)->capture_default_str();
  simulate_cmd->add_option("--sigma-minus", sim.sigma_minus)->capture_default_str();
  simulate_cmd->add_option("--total-counts", sim.total_counts)->capture_default_str();
  simulate_cmd->add_option("--half-width", sim.half_width,
                           "Scan half-width in detector steps (default: automatic)");
  simulate_cmd->get_option("--output")->description(
      "Prefix: writes PREFIX.position.txt and PREFIX.momentum.txt")->required();

  SweepConfig sweep;
  std::string pos_file, mom_file, pairing = "both";
  std::vector<std::string> witness_names;
  auto* sweep_cmd = app.add_subcommand("sweep", "Rebinning sweep over (n, m)");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("position", pos_file, "Position joint-counts file")->required();
  sweep_cmd->add_option("momentum", mom_file, "Momentum joint-counts file")->required();
  sweep_cmd->add_option("--n-list", sweep.n_values, "Odd position rebinning factors, 1,3,...,21 by default")
      ->delimiter(',');
  sweep_cmd->add_option("--m-list", sweep.m_values, "Odd momentum rebinning factors")
      ->delimiter(',');
  sweep_cmd->add_option("--pairing", pairing, "Variable pairings to evaluate")
      ->check(CLI::IsMember({"pm", "mp", "both"}))
      ->capture_default_str();
  sweep_cmd->add_option("--witnesses", witness_names,
                        "Comma list of mgvt_continuous, entropic_continuous, coarse_variance, "
                        "coarse_entropic, naive_discrete")
      ->delimiter(',');
  sweep_cmd->add_option("--k-sigma", sweep.detection_sigma,
                        "Detection needs value + k * uncertainty < 0")
      ->capture_default_str();
  sweep_cmd->add_flag("--fast", sweep.fast_mode, "Allow fewer than 100 replicates");

  DemoConfig demo;
  demo.multiplier = 4.0;
  double demo_sigma_minus = 0.0;
  auto* demo_cmd =
      app.add_subcommand("demo-false-positive", "Naive vs coarse witnesses on a separable state");
  add_common(demo_cmd, common);
  demo_cmd->add_option("--sigma", demo.sigma)->capture_default_str();
  auto* sm_opt = demo_cmd->add_option("--sigma-minus", demo_sigma_minus,
                                      "Must equal --sigma; other values are rejected");
  demo_cmd->add_option("--multiplier", demo.multiplier, "Bin widths in marginal std units")
      ->capture_default_str();
  demo_cmd->add_flag("--analytic", demo.analytic, "Exact bin masses instead of sampled counts");
  demo_cmd->add_option("--total-counts", demo.total_counts)->capture_default_str();

  BoundTableConfig table;
  std::string spacing = "linear";
  auto* table_cmd = app.add_subcommand("bound-table", "Tabulate the coarse-grained bound C");
  add_common(table_cmd, common);
  table_cmd->add_option("--gamma-min", table.gamma_min)->capture_default_str();
  table_cmd->add_option("--gamma-max", table.gamma_max)->capture_default_str();
  table_cmd->add_option("--points", table.points)->capture_default_str();
  table_cmd->add_option("--spacing", spacing)
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!dump_path.empty()) {
      with_output(dump_path, [](std::ostream& out) { write_bound_table(out, {}); });
      return 0;
    }
    if (*simulate_cmd) {
      sim.seed = common.seed;
      const auto [pos, mom] = write_simulation(common.output, simulate(sim));
      std::cerr << "wrote " << pos.string() << " and " << mom.string() << '\n';
    } else if (*sweep_cmd) {
      sweep.seed = common.seed;
      sweep.errors = common.errors;
      sweep.replicates = common.replicates;
      if (pairing == "pm") sweep.pairings = {Pairing::PlusMinus};
      if (pairing == "mp") sweep.pairings = {Pairing::MinusPlus};
      if (!witness_names.empty()) {
        sweep.witnesses.clear();
        for (const auto& name : witness_names) {
          auto id = parse_witness_id(name);
          if (!id) throw ConfigError("unknown witness '" + name + "'");
          sweep.witnesses.push_back(*id);
        }
      }
      const auto result =
          run_sweep(load_joint_counts(pos_file), load_joint_counts(mom_file), sweep);
      with_output(common.output,
                  [&](std::ostream& out) { write_sweep(out, result, common.format); });
    } else if (*demo_cmd) {
      demo.seed = common.seed;
      if (sm_opt->count()) demo.sigma_minus = demo_sigma_minus;
      const auto report = run_false_positive_demo(demo);
      with_output(common.output,
                  [&](std::ostream& out) { write_demo(out, report, common.format); });
    } else if (*table_cmd) {
      table.log_spacing = spacing == "log";
      with_output(common.output,
                  [&](std::ostream& out) { write_bound_table(out, table); });
    } else {
      std::cout << app.help();
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
