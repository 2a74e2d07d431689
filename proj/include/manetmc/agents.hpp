#pragma once

// Travelling agents and the per-node service ledgers they synchronize with.
// An agent walks the current topology trying to visit every node, preferring
// moves that extend its frontier, and exchanges provider knowledge with each
// node it lands on. Nodes admit a bounded number of distinct agents over a
// run and kill the surplus.

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "manetmc/radio.hpp"
#include "manetmc/topology.hpp"

namespace manetmc {

inline constexpr int kMigrationRetryBudget = 3;

enum class AgentStatus : unsigned char {
  Active,   // still touring
  Done,     // visited every node and reported back
  Stopped,  // its next destination ended up in a different cluster
  Killed    // terminated by a node's admission control
};

struct TravelAgent {
  int id = 0;
  int owner = 0;     // node that launched it
  int location = 0;  // current node
  AgentStatus status = AgentStatus::Active;
  int visited_count = 0;
  std::vector<std::uint8_t> visited;  // per node
  std::vector<int> rsn;               // per node: step of last visit, -1 never
  std::vector<std::uint8_t> sp_collected;  // per node: provider seen
  int retries_remaining = kMigrationRetryBudget;
  bool waiting = false;   // spends the next step idle, then retries
  int pending_target = -1;  // destination chosen from the previous snapshot
  int spawn_step = 0;

  bool alive() const { return status != AgentStatus::Killed; }
};

// Fresh agent at `node`: it has visited only its starting node and carries
// no visit-recency history.
inline TravelAgent make_agent(int id, int node, int n_nodes, int step) {
  TravelAgent a;
  a.id = id;
  a.owner = node;
  a.location = node;
  a.visited.assign(n_nodes, 0);
  a.visited[node] = 1;
  a.visited_count = 1;
  a.rsn.assign(n_nodes, -1);
  a.sp_collected.assign(n_nodes, 0);
  a.spawn_step = step;
  return a;
}

struct NodeServiceLedger {
  int node_id = 0;
  bool is_provider = false;
  std::vector<std::uint8_t> known_providers;  // per node
  int known_count = 0;
  int incoming_count = 0;  // agent arrivals this step
  std::unordered_set<int> arrived_agents;  // distinct agents seen this run

  void init(int node, int n_nodes, bool provider) {
    node_id = node;
    is_provider = provider;
    known_providers.assign(n_nodes, 0);
    if (provider) {
      known_providers[node] = 1;
      known_count = 1;
    }
  }
};

enum class Admission : unsigned char { Admit, Kill };
enum class MoveResult : unsigned char { Moved, Blocked };

// Route choice, in strict precedence from the agent's current neighbors:
//   1. an unvisited neighbor adjacent to at least two visited nodes,
//   2. any unvisited neighbor,
//   3. a visited neighbor that still has unvisited neighbors,
//   4. any neighbor.
// Rules 1-2 break ties by lowest node id; rules 3-4 prefer the least
// recently visited node (lowest rsn, then lowest id). Returns -1 when the
// agent has no neighbors at all.
inline int choose_next(const TravelAgent& a, const TopologySnapshot& s) {
  const auto& nb = s.nbr[a.location];
  if (nb.empty()) return -1;
  // Rule 1 (nb is ascending, so the first hit is the lowest id).
  for (int c : nb) {
    if (a.visited[c]) continue;
    int visited_adjacent = 0;
    for (int w : s.nbr[c]) visited_adjacent += a.visited[w] ? 1 : 0;
    if (visited_adjacent >= 2) return c;
  }
  // Rule 2.
  for (int c : nb)
    if (!a.visited[c]) return c;
  // Rule 3.
  int best = -1;
  for (int c : nb) {
    if (!a.visited[c]) continue;
    bool frontier = false;
    for (int w : s.nbr[c]) {
      if (!a.visited[w]) {
        frontier = true;
        break;
      }
    }
    if (frontier && (best == -1 || a.rsn[c] < a.rsn[best])) best = c;
  }
  if (best != -1) return best;
  // Rule 4.
  for (int c : nb)
    if (best == -1 || a.rsn[c] < a.rsn[best]) best = c;
  return best;
}

// One migration attempt along a current edge. On success the agent moves,
// marks the visit, and its retry budget resets. On a transient failure it
// stays; exhausting the retry budget makes it spend one full step waiting
// before it chooses again.
inline MoveResult attempt_migration(TravelAgent& a, int target,
                                    const TopologySnapshot& s,
                                    const FailureParams& fp, int step,
                                    Rng& rng) {
  if (target < 0 || target >= s.n || !s.adjacent(a.location, target))
    throw std::invalid_argument("attempt_migration: stale route");
  if (rng.uniform() < fp.p_t_migration) {
    a.location = target;
    if (!a.visited[target]) {
      a.visited[target] = 1;
      ++a.visited_count;
    }
    a.rsn[target] = step;
    a.retries_remaining = kMigrationRetryBudget;
    return MoveResult::Moved;
  }
  if (--a.retries_remaining <= 0) {
    a.waiting = true;
    a.pending_target = -1;
    a.retries_remaining = kMigrationRetryBudget;
  }
  return MoveResult::Blocked;
}

// Two-way knowledge merge between an agent and a node's ledger.
inline void exchange_service_info(TravelAgent& a, NodeServiceLedger& ledger) {
  const int n = static_cast<int>(ledger.known_providers.size());
  if (ledger.is_provider) a.sp_collected[ledger.node_id] = 1;
  for (int v = 0; v < n; ++v) {
    if (ledger.known_providers[v]) a.sp_collected[v] = 1;
    if (a.sp_collected[v] && !ledger.known_providers[v]) {
      ledger.known_providers[v] = 1;
      ++ledger.known_count;
    }
  }
}

// Bookkeeping for an agent that just arrived at the ledger's node: exchange
// knowledge and count the arrival.
inline void record_visit(TravelAgent& a, NodeServiceLedger& ledger) {
  if (a.location != ledger.node_id)
    throw std::invalid_argument("record_visit: agent is elsewhere");
  exchange_service_info(a, ledger);
  ++ledger.incoming_count;
}

// Admission control at arrival. A node tolerates at most max_fr distinct
// agents over a run; an arrival that pushes the count beyond that is killed
// (a returning, previously admitted agent passes freely).
inline Admission sa_admit(NodeServiceLedger& ledger, TravelAgent& a,
                          int max_fr) {
  if (ledger.arrived_agents.count(a.id)) return Admission::Admit;
  ledger.arrived_agents.insert(a.id);
  if (static_cast<int>(ledger.arrived_agents.size()) > max_fr) {
    a.status = AgentStatus::Killed;
    return Admission::Kill;
  }
  return Admission::Admit;
}

// Called when one of the node's own agents comes back: launch a replacement
// if the node still has not heard of every provider it is looking for.
inline bool sa_spawn_due(const NodeServiceLedger& ledger, int sp_total) {
  return ledger.known_count < sp_total;
}

}  // namespace manetmc
