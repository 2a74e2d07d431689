#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "manetmc/estimator.hpp"

using namespace manetmc;

namespace {

// A small arena all of whose nodes are always mutually in radio range, with
// every stochastic failure channel switched off unless a test turns it on.
ScenarioConfig clean_room(int n, int m) {
  ScenarioConfig c;
  c.n_nodes = n;
  c.m_agents = m;
  c.q_runs = 4;
  c.sp_total = 2;
  c.max_fr = n * m;  // never kill
  c.duration_min = 10.0;  // 40 steps of 15 s
  c.mobility.area_width = 100.0;
  c.mobility.area_height = 100.0;
  c.failure.lfp = 0.0;
  c.failure.p_t_migration = 1.0;
  c.failure.node_weibull_scale = 1e30;  // nodes never die
  c.failure.agent_weibull_scale = 1e30; // software survival weight 1
  validate_config(c);
  return c;
}

}  // namespace

TEST_CASE("task completion is the visited fraction or all-or-nothing",
          "[estimator]") {
  CHECK_THAT(agent_task_reliability(20, 25, ReliabilityMode::Fractional),
             Catch::Matchers::WithinAbs(0.8, 1e-12));
  CHECK(agent_task_reliability(25, 25, ReliabilityMode::Fractional) == 1.0);
  CHECK(agent_task_reliability(0, 25, ReliabilityMode::Fractional) == 0.0);
  CHECK(agent_task_reliability(24, 25, ReliabilityMode::AllOrNothing) == 0.0);
  CHECK(agent_task_reliability(25, 25, ReliabilityMode::AllOrNothing) == 1.0);
  CHECK_THROWS_AS(agent_task_reliability(3, 0, ReliabilityMode::Fractional),
                  std::invalid_argument);
  CHECK_THROWS_AS(agent_task_reliability(-1, 5, ReliabilityMode::Fractional),
                  std::invalid_argument);
  CHECK_THROWS_AS(agent_task_reliability(6, 5, ReliabilityMode::Fractional),
                  std::invalid_argument);
}

TEST_CASE("episode reliability averages completion times survival",
          "[estimator]") {
  CHECK_THAT(episode_lambda({{1.0, 1.0}, {0.5, 0.8}}),
             Catch::Matchers::WithinAbs(0.7, 1e-12));
  CHECK(episode_lambda({}) == 0.0);
  CHECK_THAT(episode_lambda({{0.25, 0.5}}),
             Catch::Matchers::WithinAbs(0.125, 1e-12));
}

TEST_CASE("population reliability is the mean over live agents",
          "[estimator]") {
  CHECK_THAT(mas_reliability({0.5, 1.0}),
             Catch::Matchers::WithinAbs(0.75, 1e-12));
  CHECK(mas_reliability({}) == 0.0);
}

TEST_CASE("node service reliability is the known-provider fraction",
          "[estimator]") {
  CHECK_THAT(node_instantaneous_reliability(1, 2),
             Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK(node_instantaneous_reliability(0, 2) == 0.0);
  CHECK(node_instantaneous_reliability(2, 2) == 1.0);
  CHECK(node_instantaneous_reliability(0, 0) == 1.0);
  CHECK_THROWS_AS(node_instantaneous_reliability(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(node_instantaneous_reliability(-1, 2), std::invalid_argument);
}

TEST_CASE("service reliability is the series time average", "[estimator]") {
  CHECK_THAT(service_reliability({1.0, 0.5, 0.0}),
             Catch::Matchers::WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(service_reliability({}), std::invalid_argument);
}

TEST_CASE("episodes are deterministic in the seed", "[estimator]") {
  ScenarioConfig c = clean_room(6, 6);
  c.failure.lfp = 0.15;
  c.failure.p_t_migration = 0.9;
  const EpisodeResult a = run_episode(c, 42);
  const EpisodeResult b = run_episode(c, 42);
  CHECK(a.lambda == b.lambda);
  CHECK(a.r_service == b.r_service);
  CHECK(a.steps == b.steps);
  REQUIRE(a.agents.size() == b.agents.size());
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    CHECK(a.agents[i].status == b.agents[i].status);
    CHECK(a.agents[i].visited_count == b.agents[i].visited_count);
  }
}

TEST_CASE("with nothing failing every agent completes its tour", "[estimator]") {
  ScenarioConfig c = clean_room(6, 6);
  const EpisodeResult res = run_episode(c, 7);
  CHECK(res.lambda == 1.0);
  CHECK(res.n_done == 6);
  CHECK(res.n_killed == 0);
  CHECK(res.n_stopped == 0);
  CHECK(res.agents_total == 6);
  CHECK(res.steps < c.step_budget());
  CHECK(res.mean_m == 6.0);
  // Everyone met both providers, so the observer's view ends complete.
  CHECK(res.r_service > 0.0);
  CHECK(res.r_service <= 1.0);
}

TEST_CASE("certain link failure strands every agent at home", "[estimator]") {
  ScenarioConfig c = clean_room(5, 5);
  c.failure.lfp = 1.0;
  c.duration_min = 5.0;  // 20 steps
  validate_config(c);
  const EpisodeResult res = run_episode(c, 3);
  CHECK_THAT(res.lambda, Catch::Matchers::WithinAbs(0.2, 1e-15));  // 1/n each
  CHECK(res.steps == c.step_budget());
  CHECK(res.n_active_end == 5);
  CHECK(res.duration_s == 300.0);
}

TEST_CASE("admission kills freeze progress or drop agents by policy",
          "[estimator]") {
  ScenarioConfig c = clean_room(4, 8);
  c.max_fr = 2;  // each node owns two agents: any newcomer is surplus
  validate_config(c);
  const EpisodeResult frozen = run_episode(c, 11);
  CHECK(frozen.n_killed == 8);
  CHECK(frozen.agents_total == 8);
  CHECK(frozen.steps == 1);
  // Every agent died on its first hop with 2 of 4 nodes seen.
  CHECK_THAT(frozen.lambda, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(frozen.mean_m, Catch::Matchers::WithinAbs(4.0, 1e-15));

  c.killed_agents = KilledAgentPolicy::Excluded;
  const EpisodeResult excluded = run_episode(c, 11);
  CHECK(excluded.n_killed == 8);
  CHECK(excluded.lambda == 0.0);
}

TEST_CASE("frozen agents visit exactly their starting component",
          "[estimator]") {
  // Sparse, effectively static network: each agent can tour no more and no
  // less than the connected component it starts in.
  ScenarioConfig c;
  c.n_nodes = 6;
  c.m_agents = 6;
  c.sp_total = 2;
  c.max_fr = 100;
  c.duration_min = 10.0;
  c.mobility.model = MobilityModel::Rwmm;
  c.mobility.v_max = 1e-12;
  c.failure.lfp = 0.0;
  c.failure.p_t_migration = 1.0;
  c.failure.node_weibull_scale = 1e30;
  c.failure.agent_weibull_scale = 1e30;
  validate_config(c);

  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    TopologySnapshot start;
    bool captured = false;
    const EpisodeResult res = run_episode(c, seed, [&](const TopologySnapshot& s) {
      if (!captured) {
        start = s;
        captured = true;
      }
    });
    REQUIRE(captured);
    std::vector<int> component_size(c.n_nodes, 0);
    for (int v = 0; v < c.n_nodes; ++v) ++component_size[start.cluster_id[v]];
    double expected = 0.0;
    for (int v = 0; v < c.n_nodes; ++v)
      expected += static_cast<double>(component_size[start.cluster_id[v]]) /
                  c.n_nodes;
    expected /= c.m_agents;
    CHECK_THAT(res.lambda, Catch::Matchers::WithinAbs(expected, 1e-12));
    for (const AgentOutcome& a : res.agents)
      CHECK(a.visited_count == component_size[start.cluster_id[a.owner]]);
  }
}

TEST_CASE("series recording matches the scalar aggregates", "[estimator]") {
  ScenarioConfig c = clean_room(5, 5);
  c.failure.lfp = 0.2;
  const EpisodeResult res = run_episode(c, 19, {}, true);
  REQUIRE(res.observer_series.size() == static_cast<std::size_t>(res.steps + 1));
  REQUIRE(res.m_series.size() == res.observer_series.size());
  CHECK_THAT(service_reliability(res.observer_series),
             Catch::Matchers::WithinAbs(res.r_service, 1e-12));
  double m_sum = 0.0;
  for (int m : res.m_series) m_sum += m;
  CHECK_THAT(m_sum / res.m_series.size(),
             Catch::Matchers::WithinAbs(res.mean_m, 1e-12));
  for (double r : res.mas_series) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("the Monte Carlo report aggregates its episodes exactly",
          "[estimator]") {
  ScenarioConfig c = clean_room(5, 5);
  c.failure.lfp = 0.25;
  c.failure.p_t_migration = 0.9;
  c.q_runs = 6;
  c.seed = 77;
  const ReliabilityReport rep = monte_carlo(c);
  REQUIRE(rep.lambdas.size() == 6);
  double mean = 0.0;
  for (int i = 0; i < 6; ++i) {
    const EpisodeResult e = run_episode(c, 77 + i);
    CHECK(e.lambda == rep.lambdas[i]);
    mean += e.lambda;
  }
  mean /= 6.0;
  CHECK_THAT(rep.mean_lambda, Catch::Matchers::WithinAbs(mean, 1e-12));
  double ss = 0.0;
  for (double lam : rep.lambdas) ss += (lam - mean) * (lam - mean);
  CHECK_THAT(rep.std_lambda,
             Catch::Matchers::WithinAbs(std::sqrt(ss / 5.0), 1e-12));
}

TEST_CASE("worker threads do not change the report", "[estimator]") {
  ScenarioConfig c = clean_room(5, 4);
  c.failure.lfp = 0.3;
  c.failure.p_t_migration = 0.85;
  c.q_runs = 8;
  c.seed = 5;
  const ReliabilityReport serial = monte_carlo(c, 1);
  const ReliabilityReport threaded = monte_carlo(c, 4);
  CHECK(serial.lambdas == threaded.lambdas);
  CHECK(serial.mean_lambda == threaded.mean_lambda);
  CHECK(serial.std_lambda == threaded.std_lambda);
  CHECK(serial.mean_r_service == threaded.mean_r_service);
  CHECK(serial.mean_m == threaded.mean_m);
}
