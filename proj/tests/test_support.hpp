#pragma once

// Shared helpers for the test suite: deterministic random graphs, node
// permutations, and scratch directories.

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "motifconv/arg_graph.hpp"
#include "motifconv/rng.hpp"

namespace testsupport {

// Connected-ish random graph with scalar Gaussian attributes on nodes and
// edges; the workhorse input for matcher and oracle checks.
inline motifconv::ArgGraph random_scalar_graph(std::mt19937_64& rng, int n_min, int n_max,
                                               double edge_prob = 0.4) {
  using namespace motifconv;
  const int n =
      n_min + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n_max - n_min + 1)));
  ArgGraph g;
  for (int i = 0; i < n; ++i) g.add_node({normal(rng)});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, edge_prob)) g.add_edge(u, v, {normal(rng)});
  return g;
}

// Relabels nodes by a uniform random permutation; edge endpoints are mapped
// and re-sorted so the result is a valid isomorphic copy. perm[i] = new index
// of old node i.
inline motifconv::ArgGraph permuted_copy(const motifconv::ArgGraph& g, std::mt19937_64& rng,
                                         std::vector<int>* perm_out = nullptr) {
  using namespace motifconv;
  const int n = g.node_count();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  shuffle_in_place(perm, rng);

  ArgGraph out;
  std::vector<std::vector<double>> attrs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    attrs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = g.node_attrs[i];
  for (auto& a : attrs) out.add_node(std::move(a));
  for (const ArgEdge& e : g.edges) {
    const int u = perm[static_cast<std::size_t>(e.u)];
    const int v = perm[static_cast<std::size_t>(e.v)];
    out.add_edge(std::min(u, v), std::max(u, v), e.attrs);
  }
  if (g.label) out.label = g.label;
  if (perm_out) *perm_out = perm;
  return out;
}

// Fresh scratch directory under the system temp root; callers clean up via
// remove_all when they care, the OS when they do not.
inline std::string scratch_dir(const std::string& tag) {
  namespace fs = std::filesystem;
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("motifconv-test-" + tag + "-" + std::to_string(++counter));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace testsupport
