#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "manetmc/agents.hpp"

using namespace manetmc;

namespace {

TravelAgent agent_at(int node, int n, std::vector<int> visited = {}) {
  TravelAgent a = make_agent(0, node, n, 0);
  for (int v : visited) {
    if (!a.visited[v]) {
      a.visited[v] = 1;
      ++a.visited_count;
    }
  }
  return a;
}

// Reference routing rule, written as candidate filtering over explicit sets
// rather than ordered scans, to cross-check choose_next.
int reference_choose(const TravelAgent& a, const TopologySnapshot& s) {
  std::vector<int> nb = s.nbr[a.location];
  if (nb.empty()) return -1;
  auto lowest = [](std::vector<int> v) {
    return *std::min_element(v.begin(), v.end());
  };
  auto by_recency = [&](std::vector<int> v) {
    int best = v[0];
    for (int c : v)
      if (a.rsn[c] < a.rsn[best] || (a.rsn[c] == a.rsn[best] && c < best))
        best = c;
    return best;
  };
  std::vector<int> unvisited, expanding;
  for (int c : nb)
    if (!a.visited[c]) unvisited.push_back(c);
  for (int c : unvisited) {
    int k = 0;
    for (int w : s.nbr[c]) k += a.visited[w] ? 1 : 0;
    if (k >= 2) expanding.push_back(c);
  }
  if (!expanding.empty()) return lowest(expanding);
  if (!unvisited.empty()) return lowest(unvisited);
  std::vector<int> frontier;
  for (int c : nb) {
    if (!a.visited[c]) continue;
    for (int w : s.nbr[c]) {
      if (!a.visited[w]) {
        frontier.push_back(c);
        break;
      }
    }
  }
  if (!frontier.empty()) return by_recency(frontier);
  return by_recency(nb);
}

}  // namespace

TEST_CASE("fresh agents know only their starting node", "[agents]") {
  const TravelAgent a = make_agent(3, 2, 5, 9);
  CHECK(a.id == 3);
  CHECK(a.owner == 2);
  CHECK(a.location == 2);
  CHECK(a.visited_count == 1);
  CHECK(a.visited[2] == 1);
  CHECK(a.rsn == std::vector<int>(5, -1));
  CHECK(a.spawn_step == 9);
  CHECK(a.status == AgentStatus::Active);
}

TEST_CASE("routing prefers unvisited nodes that touch the visited set twice",
          "[agents]") {
  // 0-1, 0-2, 2-3, 1-4: from 0 with {0,3} visited, node 2 borders two
  // visited nodes while node 1 borders one. Rule 1 picks 2 despite 1 < 2.
  const TopologySnapshot s =
      snapshot_from_edges(5, {{0, 1}, {0, 2}, {2, 3}, {1, 4}});
  const TravelAgent a = agent_at(0, 5, {3});
  CHECK(choose_next(a, s) == 2);
}

TEST_CASE("routing falls back to any unvisited neighbor, lowest id first",
          "[agents]") {
  const TopologySnapshot s = snapshot_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const TravelAgent a = agent_at(0, 4);
  CHECK(choose_next(a, s) == 1);
}

TEST_CASE("routing backtracks through the least recently seen frontier",
          "[agents]") {
  // Star: 0 joins 1 and 2; leaves 3 (behind 1) and 4 (behind 2) are unseen.
  const TopologySnapshot s =
      snapshot_from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
  TravelAgent a = agent_at(0, 5, {1, 2});
  a.rsn[1] = 5;
  a.rsn[2] = 3;
  CHECK(choose_next(a, s) == 2);  // older visit wins
  a.rsn[2] = 5;
  CHECK(choose_next(a, s) == 1);  // tie: lower id
  a.rsn[1] = -1;
  CHECK(choose_next(a, s) == 1);  // never-stamped counts as oldest
}

TEST_CASE("routing wanders by recency when everything is visited", "[agents]") {
  const TopologySnapshot s = snapshot_from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  TravelAgent a = agent_at(0, 3, {1, 2});
  a.rsn[1] = 7;
  a.rsn[2] = 4;
  CHECK(choose_next(a, s) == 2);
  a.rsn[2] = 7;
  CHECK(choose_next(a, s) == 1);
  CHECK(choose_next(agent_at(0, 3), snapshot_from_edges(3, {{1, 2}})) == -1);
}

TEST_CASE("routing matches an independent evaluation on random graphs",
          "[agents]") {
  Rng rng = Rng::derive(21, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + rng.index(8);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(0.4)) edges.push_back({i, j});
    const TopologySnapshot s = snapshot_from_edges(n, edges);
    TravelAgent a = make_agent(0, rng.index(n), n, 0);
    for (int v = 0; v < n; ++v) {
      if (v != a.location && rng.bernoulli(0.5)) {
        a.visited[v] = 1;
        ++a.visited_count;
        a.rsn[v] = rng.index(6) - 1;
      }
    }
    REQUIRE(choose_next(a, s) == reference_choose(a, s));
  }
}

TEST_CASE("migration moves the agent and stamps the visit", "[agents]") {
  const TopologySnapshot s = snapshot_from_edges(3, {{0, 1}, {1, 2}});
  FailureParams fp;
  fp.p_t_migration = 1.0;
  Rng rng = Rng::derive(21, 2);
  TravelAgent a = make_agent(0, 0, 3, 0);
  REQUIRE(attempt_migration(a, 1, s, fp, 4, rng) == MoveResult::Moved);
  CHECK(a.location == 1);
  CHECK(a.visited[1] == 1);
  CHECK(a.visited_count == 2);
  CHECK(a.rsn[1] == 4);
  CHECK(a.retries_remaining == kMigrationRetryBudget);
  CHECK_THROWS_AS(attempt_migration(a, 0, snapshot_from_edges(3, {{0, 2}}),
                                    fp, 5, rng),
                  std::invalid_argument);
}

TEST_CASE("exhausting the hop retries forces a one-step wait", "[agents]") {
  const TopologySnapshot s = snapshot_from_edges(2, {{0, 1}});
  FailureParams fp;
  fp.p_t_migration = 0.0;
  Rng rng = Rng::derive(21, 3);
  TravelAgent a = make_agent(0, 0, 2, 0);
  a.pending_target = 1;
  for (int i = 0; i < kMigrationRetryBudget - 1; ++i) {
    REQUIRE(attempt_migration(a, 1, s, fp, i, rng) == MoveResult::Blocked);
    REQUIRE_FALSE(a.waiting);
  }
  REQUIRE(attempt_migration(a, 1, s, fp, 9, rng) == MoveResult::Blocked);
  CHECK(a.waiting);
  CHECK(a.pending_target == -1);
  CHECK(a.retries_remaining == kMigrationRetryBudget);
  CHECK(a.location == 0);
}

TEST_CASE("agents and nodes pool provider knowledge transitively", "[agents]") {
  const int n = 4;
  std::vector<NodeServiceLedger> ledgers(n);
  for (int v = 0; v < n; ++v) ledgers[v].init(v, n, v == 2);

  TravelAgent courier = make_agent(0, 2, n, 0);
  exchange_service_info(courier, ledgers[2]);  // learns provider 2 on site
  CHECK(courier.sp_collected[2] == 1);

  courier.location = 1;
  record_visit(courier, ledgers[1]);  // hands the knowledge to node 1
  CHECK(ledgers[1].known_providers[2] == 1);
  CHECK(ledgers[1].known_count == 1);
  CHECK(ledgers[1].incoming_count == 1);

  TravelAgent stranger = make_agent(1, 1, n, 0);
  exchange_service_info(stranger, ledgers[1]);  // second-hand knowledge
  CHECK(stranger.sp_collected[2] == 1);

  TravelAgent misplaced = make_agent(2, 3, n, 0);
  CHECK_THROWS_AS(record_visit(misplaced, ledgers[0]), std::invalid_argument);
}

TEST_CASE("nodes kill the surplus beyond their distinct-agent budget",
          "[agents]") {
  const int max_fr = 20;
  NodeServiceLedger ledger;
  ledger.init(0, 4, false);
  std::vector<TravelAgent> agents;
  for (int i = 0; i < 22; ++i) agents.push_back(make_agent(i, 0, 4, 0));
  for (int i = 0; i < max_fr; ++i) {
    REQUIRE(sa_admit(ledger, agents[i], max_fr) == Admission::Admit);
    REQUIRE(agents[i].status == AgentStatus::Active);
  }
  // The 21st distinct visitor dies; an already admitted one returns freely.
  CHECK(sa_admit(ledger, agents[20], max_fr) == Admission::Kill);
  CHECK(agents[20].status == AgentStatus::Killed);
  CHECK(sa_admit(ledger, agents[7], max_fr) == Admission::Admit);
  CHECK(agents[7].status == AgentStatus::Active);
  CHECK(sa_admit(ledger, agents[21], max_fr) == Admission::Kill);
}

TEST_CASE("owners respawn only while providers are missing", "[agents]") {
  NodeServiceLedger ledger;
  ledger.init(0, 4, false);
  CHECK(sa_spawn_due(ledger, 2));
  ledger.known_providers[3] = 1;
  ledger.known_count = 1;
  CHECK(sa_spawn_due(ledger, 2));
  ledger.known_providers[2] = 1;
  ledger.known_count = 2;
  CHECK_FALSE(sa_spawn_due(ledger, 2));
  CHECK_FALSE(sa_spawn_due(ledger, 0));
}
