#pragma once

#include <string>
#include <vector>

#include "motifconv/arg_graph.hpp"

namespace motifconv {

// One graph is one JSON object:
//   {"nodes":[{"id":0,"attrs":[...]},...],
//    "edges":[{"u":0,"v":1,"attrs":[...]},...],
//    "center":0, "label":3}
// center and label are optional. Node ids must form a permutation of 0..n-1.
// A dataset file holds one graph object per line; blank lines are ignored.
// Doubles are emitted in shortest round-trip form, so save/load preserves
// attribute values bit-exactly.

std::string graph_to_json(const ArgGraph& g);
ArgGraph graph_from_json(const std::string& text);

void save_graph(const std::string& path, const ArgGraph& g);
ArgGraph load_graph(const std::string& path);

void save_dataset(const std::string& path, const std::vector<ArgGraph>& graphs);
std::vector<ArgGraph> load_dataset(const std::string& path);

}  // namespace motifconv
