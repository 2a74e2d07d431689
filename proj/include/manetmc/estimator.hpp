#pragma once

// The reliability estimator: closed-form per-agent and system-level
// reliability expressions, one full simulated episode (mobility, topology,
// agent touring, admission kills, cluster-split stops), and the Monte Carlo
// driver that averages episodes under a common base seed.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "manetmc/agents.hpp"
#include "manetmc/config.hpp"
#include "manetmc/mobility.hpp"
#include "manetmc/radio.hpp"
#include "manetmc/rng.hpp"
#include "manetmc/topology.hpp"

namespace manetmc {

// ---------------------------------------------------------------------------
// Closed-form pieces.

// Task completion level of one agent: the fraction of the n_total nodes it
// managed to visit, or all-or-nothing credit for a complete tour.
inline double agent_task_reliability(int visited, int n_total,
                                     ReliabilityMode mode) {
  if (n_total <= 0) throw std::invalid_argument("agent_task_reliability: empty network");
  if (visited < 0 || visited > n_total)
    throw std::invalid_argument("agent_task_reliability: visited out of range");
  if (mode == ReliabilityMode::AllOrNothing) return visited == n_total ? 1.0 : 0.0;
  return static_cast<double>(visited) / n_total;
}

// Episode-level service-discovery reliability: the mean of lambda_i * r_i
// over the agents handed in (first = task completion, second = survival
// weight). An empty set yields 0.
inline double episode_lambda(const std::vector<std::pair<double, double>>& agents) {
  if (agents.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [lam, r] : agents) sum += lam * r;
  return sum / static_cast<double>(agents.size());
}

// Instantaneous reliability of the agent population: mean survival weight of
// the agents still touring, 0 when none are.
inline double mas_reliability(const std::vector<double>& alive_r) {
  if (alive_r.empty()) return 0.0;
  double sum = 0.0;
  for (double r : alive_r) sum += r;
  return sum / static_cast<double>(alive_r.size());
}

// Instantaneous reliability of one node's service view: the fraction of the
// sp_total providers it has heard of. With nothing to discover it is 1.
inline double node_instantaneous_reliability(int known, int sp_total) {
  if (sp_total < 0) throw std::invalid_argument("node_instantaneous_reliability: bad sp_total");
  if (known < 0 || known > std::max(sp_total, 0))
    throw std::invalid_argument("node_instantaneous_reliability: known out of range");
  if (sp_total == 0) return 1.0;
  return static_cast<double>(known) / sp_total;
}

// Time-averaged service reliability over a sampled series.
inline double service_reliability(const std::vector<double>& series) {
  if (series.empty())
    throw std::invalid_argument("service_reliability: empty series");
  double sum = 0.0;
  for (double v : series) sum += v;
  return sum / static_cast<double>(series.size());
}

// ---------------------------------------------------------------------------
// One episode.

namespace stream_tag {
inline constexpr std::uint64_t kProviders = 0x70;
inline constexpr std::uint64_t kNodeLife = 0x6c;
inline constexpr std::uint64_t kNodeMobility = 0x6d;
inline constexpr std::uint64_t kLink = 0x6b;
inline constexpr std::uint64_t kAgent = 0x61;
}  // namespace stream_tag

struct AgentOutcome {
  int id = 0;
  int owner = 0;
  AgentStatus status = AgentStatus::Active;
  int visited_count = 0;
  double lambda_i = 0.0;  // task completion at episode end (frozen at death)
  double r_i = 0.0;       // survival weight over the realized duration
};

struct EpisodeResult {
  double lambda = 0.0;     // service-discovery reliability of this episode
  double r_service = 0.0;  // time-averaged observer-node service reliability
  double mean_m = 0.0;     // time-averaged count of not-killed agents
  double duration_s = 0.0; // realized simulated time
  int steps = 0;
  int agents_total = 0;    // every agent that ever existed (spawns included)
  int n_done = 0;
  int n_stopped = 0;
  int n_killed = 0;
  int n_active_end = 0;    // still touring when the step budget ran out
  std::vector<AgentOutcome> agents;
  // Filled only when record_series is requested:
  std::vector<double> mas_series;       // population reliability per step
  std::vector<double> observer_series;  // observer-node reliability per step
  std::vector<int> m_series;            // not-killed agent count per step
};

using SnapshotSink = std::function<void(const TopologySnapshot&)>;

namespace detail {

// Draw `count` distinct node ids from [0, n) by a partial shuffle.
inline std::vector<int> sample_distinct(int n, int count, Rng& rng) {
  std::vector<int> ids(n);
  for (int v = 0; v < n; ++v) ids[v] = v;
  for (int i = 0; i < count; ++i) {
    const int j = i + rng.index(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  return ids;
}

}  // namespace detail

// Simulate one episode under the given seed. `sink`, when set, receives every
// topology snapshot as it is built (step 0 first). `record_series` keeps the
// per-step series in the result instead of only their time averages.
inline EpisodeResult run_episode(const ScenarioConfig& cfg, std::uint64_t seed,
                                 const SnapshotSink& sink = {},
                                 bool record_series = false) {
  const int n = cfg.n_nodes;
  const int budget = cfg.step_budget();
  const int observer = cfg.observer();
  const MobilityParams* mob = &cfg.mobility;
  MobilityParams mob_storage;
  if (cfg.mobility.model == MobilityModel::Rpgm &&
      static_cast<int>(cfg.mobility.leader_of.size()) != n) {
    mob_storage = cfg.mobility;
    mob_storage.leader_of.assign(n, 0);
    for (int v = 0; v < n; ++v)
      mob_storage.leader_of[v] = (v / cfg.rpgm_group_size) * cfg.rpgm_group_size;
    mob = &mob_storage;
  }
  const double dt = mob->delta_t;

  // Independent streams per stochastic entity.
  Rng provider_rng = Rng::derive(seed, stream_tag::kProviders);
  Rng link_rng = Rng::derive(seed, stream_tag::kLink);
  std::vector<Rng> node_rng;
  std::vector<double> lifetime(n);
  node_rng.reserve(n);
  for (int v = 0; v < n; ++v) {
    Rng life = Rng::derive(seed, stream_tag::kNodeLife, v);
    lifetime[v] = sample_node_lifetime(cfg.failure, life);
    node_rng.push_back(Rng::derive(seed, stream_tag::kNodeMobility, v));
  }

  // Providers and per-node ledgers.
  const std::vector<int> providers =
      detail::sample_distinct(n, cfg.sp_total, provider_rng);
  std::vector<std::uint8_t> is_provider(n, 0);
  for (int v : providers) is_provider[v] = 1;
  std::vector<NodeServiceLedger> ledgers(n);
  for (int v = 0; v < n; ++v) ledgers[v].init(v, n, is_provider[v] != 0);

  // Node kinematics and liveness.
  std::vector<Kinematics> kin(n);
  for (int v = 0; v < n; ++v) {
    const bool leads = mob->model == MobilityModel::Rpgm && mob->leader_of[v] == v;
    kin[v] = init_kinematics(*mob, leads, node_rng[v]);
  }
  std::vector<std::uint8_t> operational(n);
  for (int v = 0; v < n; ++v) operational[v] = lifetime[v] > 0.0 ? 1 : 0;

  // Agent population; grows when owners respawn on incomplete returns.
  // active/killed counts are maintained on every status change so the hot
  // loop never rescans a population that spawning may have made large.
  std::vector<TravelAgent> agents;
  std::vector<Rng> agent_rng;
  int active_count = 0;
  int killed_count = 0;
  auto spawn_agent = [&](int owner, int step) {
    const int id = static_cast<int>(agents.size());
    agents.push_back(make_agent(id, owner, n, step));
    agent_rng.push_back(Rng::derive(seed, stream_tag::kAgent, id));
    TravelAgent& a = agents.back();
    if (sa_admit(ledgers[owner], a, cfg.max_fr) == Admission::Admit) {
      exchange_service_info(a, ledgers[owner]);
      if (a.visited_count == n)
        a.status = AgentStatus::Done;
      else
        ++active_count;
    } else {
      ++killed_count;
    }
  };
  // A finished or cut-off agent hands its findings to its owner, which
  // relaunches while providers are still missing from its view. May grow
  // `agents`: callers must not touch agent references afterwards.
  auto report_to_owner = [&](TravelAgent& a, int step) {
    exchange_service_info(a, ledgers[a.owner]);
    if (operational[a.owner] && sa_spawn_due(ledgers[a.owner], cfg.sp_total))
      spawn_agent(a.owner, step);
  };
  for (int j = 0; j < cfg.m_agents; ++j) spawn_agent(j % n, 0);

  EpisodeResult res;
  double obs_sum = 0.0;
  double m_sum = 0.0;
  int samples = 0;
  auto sample_series = [&](int step) {
    const int m_t = static_cast<int>(agents.size()) - killed_count;
    const double r_t = agent_reliability(step * dt, cfg.failure);
    const double mas = active_count > 0 ? r_t : 0.0;
    const double obs = node_instantaneous_reliability(
        ledgers[observer].known_count, cfg.sp_total);
    obs_sum += obs;
    m_sum += m_t;
    ++samples;
    if (record_series) {
      res.mas_series.push_back(mas);
      res.observer_series.push_back(obs);
      res.m_series.push_back(m_t);
    }
    for (NodeServiceLedger& l : ledgers) l.incoming_count = 0;
  };

  TopologySnapshot snap = build_snapshot(kin, operational, cfg.radio,
                                         cfg.failure, dt, 0, nullptr, link_rng);
  if (sink) sink(snap);
  sample_series(0);
  for (TravelAgent& a : agents)
    if (a.status == AgentStatus::Active && !a.waiting)
      a.pending_target = choose_next(a, snap);

  int step = 0;
  while (step < budget && active_count > 0) {
    ++step;
    step_population(kin, *mob, node_rng);
    const double now = step * dt;
    for (int v = 0; v < n; ++v) {
      if (operational[v] && lifetime[v] <= now) {
        operational[v] = 0;
        // The crash takes down whatever is hosted there.
        for (TravelAgent& a : agents) {
          if (a.status == AgentStatus::Active && a.location == v) {
            a.status = AgentStatus::Killed;
            --active_count;
            ++killed_count;
          }
        }
      }
    }
    snap = build_snapshot(kin, operational, cfg.radio, cfg.failure, dt, step,
                          &snap, link_rng);
    if (sink) sink(snap);

    for (std::size_t i = 0; i < agents.size(); ++i) {
      TravelAgent& a = agents[i];
      if (a.status != AgentStatus::Active) continue;
      if (a.waiting) {  // the step after a run of failed hops is spent idle
        a.waiting = false;
        continue;
      }
      if (a.pending_target < 0) continue;  // was isolated; re-chosen below
      if (!snap.adjacent(a.location, a.pending_target)) {
        // The destination picked from the previous snapshot is gone. If it
        // merely stopped being a direct neighbor, re-route inside the
        // cluster; if the cluster split away, the tour is over.
        if (snap.cluster_id[a.location] == snap.cluster_id[a.pending_target]) {
          a.pending_target = choose_next(a, snap);
          if (a.pending_target < 0) continue;
        } else {
          a.status = AgentStatus::Stopped;
          --active_count;
          report_to_owner(a, step);  // may spawn: `a` is dead after this
          continue;
        }
      }
      if (attempt_migration(a, a.pending_target, snap, cfg.failure, step,
                            agent_rng[i]) == MoveResult::Moved) {
        a.pending_target = -1;
        record_visit(a, ledgers[a.location]);
        if (sa_admit(ledgers[a.location], a, cfg.max_fr) == Admission::Kill) {
          --active_count;
          ++killed_count;
          continue;
        }
        if (a.visited_count == n) {
          a.status = AgentStatus::Done;
          --active_count;
          report_to_owner(a, step);  // may spawn: `a` is dead after this
        }
      }
    }

    sample_series(step);
    for (TravelAgent& a : agents)
      if (a.status == AgentStatus::Active && !a.waiting && a.pending_target < 0)
        a.pending_target = choose_next(a, snap);
  }

  // Fold the episode into its reliability figures.
  res.steps = step;
  res.duration_s = step * dt;
  res.agents_total = static_cast<int>(agents.size());
  const double r_final = agent_reliability(res.duration_s, cfg.failure);
  double lam_sum = 0.0;
  int k = 0;
  res.agents.reserve(agents.size());
  for (const TravelAgent& a : agents) {
    AgentOutcome out;
    out.id = a.id;
    out.owner = a.owner;
    out.status = a.status;
    out.visited_count = a.visited_count;
    out.lambda_i = agent_task_reliability(a.visited_count, n, cfg.reliability_mode);
    out.r_i = r_final;
    res.agents.push_back(out);
    switch (a.status) {
      case AgentStatus::Done: ++res.n_done; break;
      case AgentStatus::Stopped: ++res.n_stopped; break;
      case AgentStatus::Killed: ++res.n_killed; break;
      case AgentStatus::Active: ++res.n_active_end; break;
    }
    if (cfg.killed_agents == KilledAgentPolicy::Excluded &&
        a.status == AgentStatus::Killed)
      continue;
    lam_sum += out.lambda_i * out.r_i;
    ++k;
  }
  res.lambda = k > 0 ? lam_sum / k : 0.0;
  res.r_service = obs_sum / samples;
  res.mean_m = m_sum / samples;
  return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo aggregation.

struct ReliabilityReport {
  double mean_lambda = 0.0;
  double std_lambda = 0.0;   // sample standard deviation across episodes
  double mean_r_service = 0.0;
  double mean_m = 0.0;
  double mean_done = 0.0;    // episode-mean agent counts by final state
  double mean_stopped = 0.0;
  double mean_killed = 0.0;
  int q_runs = 0;
  std::vector<double> lambdas;  // per episode, in episode order
};

// Run q_runs independent episodes with seeds cfg.seed, cfg.seed+1, ... and
// aggregate. Results are identical for any jobs count: episodes write into
// slots addressed by their index and are folded in index order.
inline ReliabilityReport monte_carlo(const ScenarioConfig& cfg, int jobs = 1) {
  const int q = cfg.q_runs;
  std::vector<EpisodeResult> episodes(q);
  auto run_one = [&](int i) {
    episodes[i] = run_episode(cfg, cfg.seed + static_cast<std::uint64_t>(i));
    episodes[i].agents = {};  // aggregation only reads the scalars
  };
  if (jobs <= 1 || q <= 1) {
    for (int i = 0; i < q; ++i) run_one(i);
  } else {
    const int workers = std::min(jobs, q);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < q; i = next.fetch_add(1)) run_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  ReliabilityReport rep;
  rep.q_runs = q;
  rep.lambdas.reserve(q);
  for (const EpisodeResult& e : episodes) {
    rep.lambdas.push_back(e.lambda);
    rep.mean_lambda += e.lambda;
    rep.mean_r_service += e.r_service;
    rep.mean_m += e.mean_m;
    rep.mean_done += e.n_done;
    rep.mean_stopped += e.n_stopped;
    rep.mean_killed += e.n_killed;
  }
  rep.mean_lambda /= q;
  rep.mean_r_service /= q;
  rep.mean_m /= q;
  rep.mean_done /= q;
  rep.mean_stopped /= q;
  rep.mean_killed /= q;
  double ss = 0.0;
  for (double lam : rep.lambdas) {
    const double d = lam - rep.mean_lambda;
    ss += d * d;
  }
  rep.std_lambda = q > 1 ? std::sqrt(ss / (q - 1)) : 0.0;
  return rep;
}

}  // namespace manetmc
