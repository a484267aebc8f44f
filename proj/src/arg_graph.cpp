#include "motifconv/arg_graph.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace motifconv {

int ArgGraph::add_node(std::vector<double> attrs) {
  node_attrs.push_back(std::move(attrs));
  return static_cast<int>(node_attrs.size()) - 1;
}

void ArgGraph::add_edge(int u, int v, std::vector<double> attrs) {
  edges.push_back(ArgEdge{u, v, std::move(attrs)});
}

void ArgGraph::validate() const {
  const int n = node_count();
  if (n < 1) throw std::invalid_argument("graph has no nodes");

  const std::size_t node_dim = node_attrs.front().size();
  for (int i = 0; i < n; ++i) {
    if (node_attrs[i].size() != node_dim)
      throw std::invalid_argument("node " + std::to_string(i) + ": attribute dimension " +
                                  std::to_string(node_attrs[i].size()) + " != " +
                                  std::to_string(node_dim));
    for (double x : node_attrs[i])
      if (!std::isfinite(x))
        throw std::invalid_argument("node " + std::to_string(i) + ": non-finite attribute");
  }

  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const ArgEdge& edge = edges[e];
    const std::string where = "edge " + std::to_string(e) + " (" + std::to_string(edge.u) +
                              "," + std::to_string(edge.v) + ")";
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n)
      throw std::invalid_argument(where + ": endpoint out of range [0," + std::to_string(n) + ")");
    if (edge.u == edge.v) throw std::invalid_argument(where + ": self loop");
    if (edge.attrs.size() != edges.front().attrs.size())
      throw std::invalid_argument(where + ": attribute dimension " +
                                  std::to_string(edge.attrs.size()) + " != " +
                                  std::to_string(edges.front().attrs.size()));
    for (double x : edge.attrs)
      if (!std::isfinite(x)) throw std::invalid_argument(where + ": non-finite attribute");
    auto key = std::minmax(edge.u, edge.v);
    if (!seen.insert(key).second) throw std::invalid_argument(where + ": duplicate pair");
  }

  if (center && (*center < 0 || *center >= n))
    throw std::invalid_argument("center " + std::to_string(*center) + " out of range");
}

std::vector<std::vector<std::pair<int, int>>> build_adjacency(const ArgGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.node_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
    adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
  }
  return adj;
}

bool structurally_equal(const ArgGraph& a, const ArgGraph& b) {
  if (a.node_attrs != b.node_attrs) return false;
  if (a.edges.size() != b.edges.size()) return false;
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    if (a.edges[e].u != b.edges[e].u || a.edges[e].v != b.edges[e].v ||
        a.edges[e].attrs != b.edges[e].attrs)
      return false;
  }
  return a.center == b.center && a.label == b.label;
}

}  // namespace motifconv
