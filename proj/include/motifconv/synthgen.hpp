#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "motifconv/arg_graph.hpp"

namespace motifconv {

// Whether each extra node added to a sample is tied to the rest of the graph
// by a single edge or left isolated.
enum class AttachPolicy { One, None };

AttachPolicy attach_policy_from_name(const std::string& name);
std::string attach_policy_name(AttachPolicy p);

struct SynthParams {
  double noise_sigma = 0.1;    // stddev of the additive node-attribute noise
  int extra_node_trials = 4;   // binomial trials for the added-node count
  double extra_node_p = 0.1;   // binomial success probability
  AttachPolicy attach = AttachPolicy::One;
};

// One of the five fixed class templates; id doubles as the class label.
struct Template {
  int id = 0;
  ArgGraph base;
};

// The five built-in templates (5-6 nodes, scalar node attributes in
// {0,1,2}, scalar edge attributes in {0.5,1.0,1.5}). Templates 2 and 5
// share the same structure and node attributes and differ in exactly two
// edge attributes (1.0 -> 1.5), making them the hardest pair to tell
// apart; every other pair is further separated.
const std::vector<Template>& builtin_templates();

// Draws one noisy sample: copy the template, add m ~ Binomial(trials, p)
// extra nodes (attributes drawn from the template's node-attribute values;
// under AttachPolicy::One each is connected to a uniformly chosen already
// existing node by an edge whose attribute is drawn from the template's
// edge-attribute values), then add N(0, sigma) noise to every node
// attribute component. Label = template id.
ArgGraph sample_graph(const Template& t, std::mt19937_64& rng,
                      const SynthParams& p = {});

// Balanced labeled dataset: size/5 samples per template (any remainder goes
// to the lowest template ids), deterministically shuffled. size < 5 is an
// error.
std::vector<ArgGraph> generate_dataset(int size, std::uint64_t seed,
                                       const SynthParams& p = {});

}  // namespace motifconv
