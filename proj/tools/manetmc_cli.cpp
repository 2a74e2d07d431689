// Command-line front end for the reliability estimator.
//
//   manetmc run      one Monte Carlo estimate, report as key = value lines
//   manetmc sweep    vary one config key over a list of values, report as CSV
//   manetmc validate parse + range-check a config, echo its canonical form
//
// Exit codes: 0 on success, 1 on runtime failure, 2 on usage/config errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manetmc/manetmc.hpp"

namespace {

manetmc::ScenarioConfig load_config(const std::string& path) {
  if (path.empty()) {
    manetmc::ScenarioConfig c;
    manetmc::validate_config(c);
    return c;
  }
  std::ifstream in(path);
  if (!in) throw manetmc::ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return manetmc::parse_config(buf.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

std::string report_text(const manetmc::ReliabilityReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "mean_lambda = %.9g\n"
                "std_lambda = %.9g\n"
                "r_service = %.9g\n"
                "mean_m = %.9g\n"
                "mean_done = %.9g\n"
                "mean_stopped = %.9g\n"
                "mean_killed = %.9g\n"
                "q_runs = %d\n",
                r.mean_lambda, r.std_lambda, r.mean_r_service, r.mean_m,
                r.mean_done, r.mean_stopped, r.mean_killed, r.q_runs);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo reliability estimator for agent-based service "
               "discovery on mobile ad hoc networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string snapshot_path;
  std::string param;
  std::string svg_path;
  std::vector<std::string> values;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 1;

  CLI::App* run = app.add_subcommand("run", "estimate reliability for one configuration");
  run->add_option("--config", config_path, "configuration file (key = value lines)");
  run->add_option("--seed", seed, "override the base seed")->each([&](const std::string&) {
    seed_given = true;
  });
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_option("--jobs", jobs, "worker threads for the episode loop")
      ->check(CLI::PositiveNumber);
  run->add_option("--dump-snapshots", snapshot_path,
                  "write the first episode's per-step edge lists to this file");

  CLI::App* sweep = app.add_subcommand("sweep", "rerun the estimate over a range of one key");
  sweep->add_option("--config", config_path, "configuration file (key = value lines)");
  sweep->add_option("--seed", seed, "override the base seed")->each([&](const std::string&) {
    seed_given = true;
  });
  sweep->add_option("--param", param, "config key to vary")->required();
  sweep->add_option("--values", values, "values for the swept key")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_path, "write the CSV here instead of stdout");
  sweep->add_option("--jobs", jobs, "worker threads for the episode loop")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--svg", svg_path, "also render the sweep as an SVG chart");

  CLI::App* validate = app.add_subcommand("validate", "check a config and echo its canonical form");
  validate->add_option("--config", config_path, "configuration file (key = value lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    manetmc::ScenarioConfig cfg = load_config(config_path);
    if (seed_given) cfg.seed = seed;

    if (run->parsed()) {
      if (!snapshot_path.empty()) {
        std::ostringstream dump;
        manetmc::run_episode(cfg, cfg.seed, [&](const manetmc::TopologySnapshot& s) {
          manetmc::dump_edges(s, dump);
        });
        write_file(snapshot_path, dump.str());
      }
      emit(out_path, report_text(manetmc::monte_carlo(cfg, jobs)));
    } else if (sweep->parsed()) {
      const manetmc::SweepResult result = manetmc::run_sweep(cfg, param, values, jobs);
      emit(out_path, manetmc::sweep_csv(result));
      if (!svg_path.empty()) write_file(svg_path, manetmc::sweep_chart(result));
    } else if (validate->parsed()) {
      std::cout << manetmc::serialize_config(cfg);
    }
  } catch (const manetmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
