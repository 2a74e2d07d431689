#pragma once

// Per-step network snapshots: which links are up, what they carry, and the
// partition of nodes into connected clusters.

#include <cstdint>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "manetmc/mobility.hpp"
#include "manetmc/radio.hpp"

namespace manetmc {

struct TopologySnapshot {
  int n = 0;
  int step = 0;
  std::vector<std::uint8_t> adjacency;   // n*n, symmetric, no self-loops
  std::vector<double> capacity_bps;      // n*n, 0 where no edge
  std::vector<std::uint8_t> operational; // per node
  std::vector<int> cluster_id;           // per node, dense ids from 0
  std::vector<LinkMemory> link_memory;   // n*n, transient state carried forward
  std::vector<std::vector<int>> nbr;     // per node, ascending

  bool adjacent(int i, int j) const { return adjacency[i * n + j] != 0; }
  double capacity(int i, int j) const { return capacity_bps[i * n + j]; }
};

// Connected-component labels via breadth-first search. Components are
// numbered in ascending order of their lowest node id; every isolated or
// failed node forms its own cluster.
inline void assign_clusters(TopologySnapshot& s) {
  s.cluster_id.assign(s.n, -1);
  int next = 0;
  std::queue<int> q;
  for (int v = 0; v < s.n; ++v) {
    if (s.cluster_id[v] != -1) continue;
    s.cluster_id[v] = next;
    q.push(v);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : s.nbr[u]) {
        if (s.cluster_id[w] == -1) {
          s.cluster_id[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
}

// Build the snapshot for one step from node positions and liveness. Link
// transient memory is carried over from `prev` (keyed by the node pair) and
// discarded for pairs that are out of range or involve a failed node.
// Draws are consumed in ascending pair order, one per in-range pair.
inline TopologySnapshot build_snapshot(const std::vector<Kinematics>& kin,
                                       const std::vector<std::uint8_t>& operational,
                                       const RadioParams& rp,
                                       const FailureParams& fp,
                                       double delta_t, int step,
                                       const TopologySnapshot* prev,
                                       Rng& link_rng) {
  const int n = static_cast<int>(kin.size());
  if (static_cast<int>(operational.size()) != n)
    throw std::invalid_argument("build_snapshot: size mismatch");
  TopologySnapshot s;
  s.n = n;
  s.step = step;
  s.adjacency.assign(static_cast<size_t>(n) * n, 0);
  s.capacity_bps.assign(static_cast<size_t>(n) * n, 0.0);
  s.operational = operational;
  s.link_memory.assign(static_cast<size_t>(n) * n, LinkMemory::Fresh);
  s.nbr.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!operational[i] || !operational[j]) continue;
      const double d = std::hypot(kin[i].x - kin[j].x, kin[i].y - kin[j].y);
      const LinkMemory prev_mem =
          prev ? prev->link_memory[i * prev->n + j] : LinkMemory::Fresh;
      const LinkStatus st = link_up(d, rp, fp, delta_t, prev_mem, link_rng);
      s.link_memory[i * n + j] = st.memory;
      s.link_memory[j * n + i] = st.memory;
      if (st.usable) {
        const double cap =
            d == 0.0 ? std::numeric_limits<double>::infinity()
                     : link_capacity(received_power(d, rp), rp);
        s.adjacency[i * n + j] = s.adjacency[j * n + i] = 1;
        s.capacity_bps[i * n + j] = s.capacity_bps[j * n + i] = cap;
        s.nbr[i].push_back(j);
        s.nbr[j].push_back(i);
      }
    }
  }
  assign_clusters(s);
  return s;
}

// Fixed-scenario constructor: all nodes operational, the given undirected
// edges up with the stated capacity. Lets tests and replays pin a topology
// independently of positions.
inline TopologySnapshot snapshot_from_edges(
    int n, const std::vector<std::pair<int, int>>& edges, int step = 0,
    double capacity_bps = 1e6) {
  TopologySnapshot s;
  s.n = n;
  s.step = step;
  s.adjacency.assign(static_cast<size_t>(n) * n, 0);
  s.capacity_bps.assign(static_cast<size_t>(n) * n, 0.0);
  s.operational.assign(n, 1);
  s.link_memory.assign(static_cast<size_t>(n) * n, LinkMemory::Fresh);
  s.nbr.assign(n, {});
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n || i == j)
      throw std::invalid_argument("snapshot_from_edges: bad edge");
    if (s.adjacency[i * n + j]) continue;
    s.adjacency[i * n + j] = s.adjacency[j * n + i] = 1;
    s.capacity_bps[i * n + j] = s.capacity_bps[j * n + i] = capacity_bps;
    s.link_memory[i * n + j] = s.link_memory[j * n + i] = LinkMemory::Up;
    s.nbr[i].push_back(j);
    s.nbr[j].push_back(i);
  }
  for (auto& list : s.nbr) std::sort(list.begin(), list.end());
  assign_clusters(s);
  return s;
}

// Adjacent operational nodes of v, ascending.
inline const std::vector<int>& neighbors(const TopologySnapshot& s, int v) {
  if (v < 0 || v >= s.n) throw std::out_of_range("neighbors: no such node");
  return s.nbr[v];
}

// Append this step's edge list as "step i j capacity_bps" lines (i < j).
inline void dump_edges(const TopologySnapshot& s, std::ostream& os) {
  char line[96];
  for (int i = 0; i < s.n; ++i) {
    for (int j = i + 1; j < s.n; ++j) {
      if (!s.adjacent(i, j)) continue;
      std::snprintf(line, sizeof line, "%d %d %d %.9g\n", s.step, i, j,
                    s.capacity(i, j));
      os << line;
    }
  }
}

}  // namespace manetmc
