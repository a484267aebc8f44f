#pragma once

#include "motifconv/arg_graph.hpp"

namespace motifconv {

// Induced subgraph on every node within graph distance <= k of v, with the
// image of v as center. Node indices are re-densified in ascending original
// order; attribute vectors are copied; the source label is not carried over.
// When members is non-null it receives the original indices of the included
// nodes, in ascending order.
ArgGraph k_hop_subgraph(const ArgGraph& g, int v, int k,
                        std::vector<int>* members = nullptr);

}  // namespace motifconv
