// Small end-to-end tour of the library: one Monte Carlo estimate, a peek at
// the first episode, and a link-failure sweep rendered to SVG.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "manetmc/manetmc.hpp"

int main(int argc, char** argv) {
  using namespace manetmc;

  ScenarioConfig cfg;
  cfg.n_nodes = 25;
  cfg.m_agents = 25;
  cfg.q_runs = 40;
  cfg.sp_total = 2;
  cfg.max_fr = 20;
  cfg.duration_min = 750.0;
  cfg.seed = 2024;
  validate_config(cfg);

  const EpisodeResult first = run_episode(cfg, cfg.seed);
  std::printf("first episode: lambda=%.4f steps=%d agents=%d "
              "(done=%d stopped=%d killed=%d)\n",
              first.lambda, first.steps, first.agents_total, first.n_done,
              first.n_stopped, first.n_killed);

  const ReliabilityReport rep = monte_carlo(cfg);
  std::printf("over %d episodes: lambda=%.4f +/- %.4f, service=%.4f, "
              "mean agents alive=%.2f\n",
              rep.q_runs, rep.mean_lambda, rep.std_lambda, rep.mean_r_service,
              rep.mean_m);

  cfg.q_runs = 20;
  const SweepResult sweep =
      run_sweep(cfg, "lfp", {"0", "0.1", "0.2", "0.3", "0.4", "0.5"});
  std::printf("%s", sweep_csv(sweep).c_str());

  const char* svg_path = argc > 1 ? argv[1] : "lfp_sweep.svg";
  std::ofstream svg(svg_path);
  svg << sweep_chart(sweep);
  std::printf("sweep chart written to %s\n", svg_path);
  return 0;
}
