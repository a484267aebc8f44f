#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "motifconv/arg_graph.hpp"
#include "motifconv/compat.hpp"
#include "motifconv/matching.hpp"

namespace motifconv {

struct VocabParams {
  int k = 3;                 // neighborhood radius for sampled subgraphs
  int sample_target = 60;    // accepted subgraph count to aim for
  int n_motifs = 5;          // vocabulary size N
  int partition_size = 256;  // max subgraphs clustered in one batch
  int per_partition_keep = 12;  // medoids kept per batch when partitioning
  std::uint64_t seed = 42;
};

// Ordered motif list; the order defines feature dimensions and is fixed at
// build time. Every motif is a sampled subgraph with a center node.
struct MotifVocabulary {
  std::vector<ArgGraph> motifs;
  int k = 0;
  CompatConfig kernel;
  std::uint64_t seed = 0;          // sampling seed the vocabulary was built with
  std::vector<int> cluster_sizes;  // per motif, from the final clustering
};

// Draws subgraph centers uniformly at random (graph first, then node). A
// candidate center that already appears as a node of any previously accepted
// subgraph is accepted with probability 0.5, otherwise always. Stops after
// sample_target accepted subgraphs or 20 * sample_target attempts.
std::vector<ArgGraph> sample_subgraphs(const std::vector<ArgGraph>& dataset,
                                       const VocabParams& params);

// Agglomerative clustering on distance d = 1 - sim with average linkage
// (UPGMA), run until n_clusters remain. Returns one label in 0..n_clusters-1
// per item; clusters are numbered by their smallest member index. Distance
// ties are broken by the smallest (min member, max member) pair of the
// candidate clusters, so the result is deterministic.
std::vector<int> average_linkage_cluster(const Mat& sim, int n_clusters);

// Member with the largest total similarity to the other members; ties go to
// the lowest index.
int select_medoid(const std::vector<int>& members, const Mat& sim);

// sample -> (batched clustering while the set exceeds partition_size,
// keeping per-partition medoids) -> final clustering into n_motifs clusters
// -> medoids, ordered by descending cluster size (ties: lowest member
// index). Deterministic given the seed and independent of worker count.
MotifVocabulary build_vocabulary(const std::vector<ArgGraph>& dataset,
                                 const VocabParams& params, const CompatConfig& cfg,
                                 const MatchParams& match_params, int workers);

// Vocabulary file: a JSON header line (k, kernels, alpha, preset, motif
// count, cluster sizes) followed by one motif graph per line in the graph
// serialization format.
void save_vocabulary(const std::string& path, const MotifVocabulary& vocab);
MotifVocabulary load_vocabulary(const std::string& path);

}  // namespace motifconv
