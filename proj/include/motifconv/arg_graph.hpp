#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace motifconv {

struct ArgEdge {
  int u = 0;
  int v = 0;
  std::vector<double> attrs;
};

// Attributed relational graph. Nodes are dense indices 0..n-1 and carry a
// real attribute vector; edges are undirected, stored once per unordered
// pair, and carry their own attribute vector. Instances are treated as
// immutable once built, so they can be shared read-only across workers.
struct ArgGraph {
  std::vector<std::vector<double>> node_attrs;
  std::vector<ArgEdge> edges;
  std::optional<int> center;
  std::optional<int> label;

  int node_count() const { return static_cast<int>(node_attrs.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int add_node(std::vector<double> attrs);
  void add_edge(int u, int v, std::vector<double> attrs);

  // Checks the structural invariants: n >= 1, consistent attribute
  // dimensions, edge endpoints in range, no self loops, no duplicate
  // unordered pairs, center/label sane. Throws std::invalid_argument with a
  // message naming the offending node or edge.
  void validate() const;
};

// adjacency[u] -> list of (neighbor, edge index), both directions of every
// stored edge.
std::vector<std::vector<std::pair<int, int>>> build_adjacency(const ArgGraph& g);

// Field-by-field bit-exact comparison (edge order included).
bool structurally_equal(const ArgGraph& a, const ArgGraph& b);

}  // namespace motifconv
