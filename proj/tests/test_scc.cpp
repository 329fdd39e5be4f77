// ===== tests/test_scc.cpp — strongly connected component tests =====
//
// The oracle is brute force: pairwise reachability by BFS, components as
// mutual-reachability equivalence classes.  The implementation must produce
// the same partition on 200 seeded random digraphs, flag nontriviality
// exactly for multi-node components and self-loops, and emit components in
// reverse topological order of the condensation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <deque>
#include <random>
#include <vector>

#include "tccp/mcgraph.hpp"

using namespace tccp;

namespace {

using Adj = std::vector<std::vector<int>>;

std::vector<std::vector<bool>> reachability(const Adj& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<std::vector<bool>> reach(
      static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int s = 0; s < n; ++s) {
    std::deque<int> work{s};
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      for (int v : adj[static_cast<std::size_t>(u)])
        if (!reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]) {
          reach[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] = true;
          work.push_back(v);
        }
    }
  }
  return reach;
}

/// Mutual-reachability classes, each sorted, the list sorted by first node.
std::vector<std::vector<int>> oracle_partition(const Adj& adj) {
  int n = static_cast<int>(adj.size());
  auto reach = reachability(adj);
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (placed[static_cast<std::size_t>(i)]) continue;
    std::vector<int> comp;
    for (int j = 0; j < n; ++j) {
      bool mutual = i == j || (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                               reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      if (mutual) {
        comp.push_back(j);
        placed[static_cast<std::size_t>(j)] = true;
      }
    }
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> canonical(std::vector<std::vector<int>> comps) {
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end());
  return comps;
}

bool oracle_nontrivial(const std::vector<int>& comp, const Adj& adj) {
  if (comp.size() > 1) return true;
  int v = comp[0];
  const auto& out = adj[static_cast<std::size_t>(v)];
  return std::find(out.begin(), out.end(), v) != out.end();
}

/// Every cross edge must point at an earlier (already emitted) component.
bool reverse_topological(const std::vector<std::vector<int>>& comps,
                         const Adj& adj) {
  std::vector<int> pos(adj.size(), -1);
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (int v : comps[k]) pos[static_cast<std::size_t>(v)] = static_cast<int>(k);
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (int v : adj[u])
      if (pos[u] != pos[static_cast<std::size_t>(v)] &&
          pos[static_cast<std::size_t>(v)] > pos[u])
        return false;
  return true;
}

Adj random_graph(std::mt19937& rng) {
  std::uniform_int_distribution<int> size_dist(1, 50);
  int n = size_dist(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double density = 0.02 + 0.13 * unit(rng);
  Adj adj(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (unit(rng) < density) adj[static_cast<std::size_t>(u)].push_back(v);
  return adj;
}

}  // namespace

TEST_CASE("component partition on fixed graphs") {
  // Two 2-cycles joined by a bridge, plus an isolated self-loop.
  Adj adj = {{1}, {0, 2}, {3}, {2}, {4}};
  auto comps = sccs(adj);
  CHECK(canonical(comps) == oracle_partition(adj));
  REQUIRE(comps.size() == 3);
  for (const auto& c : comps) CHECK(nontrivial(c, adj) == oracle_nontrivial(c, adj));
  CHECK(reverse_topological(comps, adj));

  // A chain has only trivial components.
  Adj chain = {{1}, {2}, {3}, {}};
  auto chain_comps = sccs(chain);
  CHECK(chain_comps.size() == 4);
  for (const auto& c : chain_comps) CHECK_FALSE(nontrivial(c, chain));
  CHECK(reverse_topological(chain_comps, chain));

  CHECK(sccs({}).empty());
}

TEST_CASE("component partition matches the oracle on 200 random digraphs") {
  std::mt19937 rng(424242);
  for (int round = 0; round < 200; ++round) {
    Adj adj = random_graph(rng);
    auto comps = sccs(adj);
    CHECK_MESSAGE(canonical(comps) == oracle_partition(adj), "round ", round,
                  " (", adj.size(), " nodes): wrong partition");
    for (const auto& c : comps)
      CHECK_MESSAGE(nontrivial(c, adj) == oracle_nontrivial(c, adj), "round ",
                    round, ": nontriviality flag differs");
    CHECK_MESSAGE(reverse_topological(comps, adj), "round ", round,
                  ": order is not reverse topological");
  }
}
