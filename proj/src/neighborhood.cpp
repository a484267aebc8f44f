#include "motifconv/neighborhood.hpp"

#include <queue>
#include <stdexcept>
#include <string>

namespace motifconv {

ArgGraph k_hop_subgraph(const ArgGraph& g, int v, int k, std::vector<int>* members) {
  const int n = g.node_count();
  if (v < 0 || v >= n)
    throw std::invalid_argument("k_hop_subgraph: node " + std::to_string(v) +
                                " out of range [0," + std::to_string(n) + ")");
  if (k < 1) throw std::invalid_argument("k_hop_subgraph: k must be >= 1");

  const auto adj = build_adjacency(g);
  std::vector<int> dist(n, -1);
  std::queue<int> frontier;
  dist[v] = 0;
  frontier.push(v);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    if (dist[u] == k) continue;
    for (const auto& [w, e] : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }

  std::vector<int> remap(n, -1);
  ArgGraph sub;
  if (members) members->clear();
  for (int u = 0; u < n; ++u) {
    if (dist[u] >= 0) {
      remap[u] = sub.add_node(g.node_attrs[u]);
      if (members) members->push_back(u);
    }
  }
  for (const ArgEdge& e : g.edges) {
    if (remap[e.u] >= 0 && remap[e.v] >= 0) sub.add_edge(remap[e.u], remap[e.v], e.attrs);
  }
  sub.center = remap[v];
  return sub;
}

}  // namespace motifconv
