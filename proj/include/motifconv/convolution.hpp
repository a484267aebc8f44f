#pragma once

#include <string>
#include <vector>

#include "motifconv/arg_graph.hpp"
#include "motifconv/compat.hpp"
#include "motifconv/matching.hpp"
#include "motifconv/vocabulary.hpp"

namespace motifconv {

// Per-node motif-similarity features for one graph; row order equals node
// order and every entry lies in [0,1] before standardization.
struct FeatureMatrix {
  int graph_id = 0;
  std::vector<std::vector<double>> rows;
};

enum class Readout { Max, Mean, Sum };
Readout readout_from_name(const std::string& name);
std::string readout_name(Readout mode);

// Score of v's k-hop neighborhood against every motif, in vocabulary order.
// The kernel config must match the one the vocabulary was built with.
std::vector<double> motif_convolve_node(const ArgGraph& g, int v,
                                        const MotifVocabulary& vocab,
                                        const CompatConfig& cfg,
                                        const MatchParams& match_params);

// motif_convolve_node for every node; (node, motif) scores are computed as
// independent tasks, so the result is bit-identical for any worker count.
FeatureMatrix motif_convolve_graph(const ArgGraph& g, const MotifVocabulary& vocab,
                                   const CompatConfig& cfg,
                                   const MatchParams& match_params, int workers,
                                   int graph_id = 0);

std::vector<FeatureMatrix> motif_convolve_dataset(const std::vector<ArgGraph>& graphs,
                                                  const MotifVocabulary& vocab,
                                                  const CompatConfig& cfg,
                                                  const MatchParams& match_params,
                                                  int workers);

// Same, but consults a disk cache keyed by a hash of the dataset, the
// vocabulary, and the matcher settings. cache_dir == "" disables caching.
// Cache files are written atomically (temp file + rename).
std::vector<FeatureMatrix> motif_convolve_dataset_cached(
    const std::vector<ArgGraph>& graphs, const MotifVocabulary& vocab,
    const CompatConfig& cfg, const MatchParams& match_params, int workers,
    const std::string& cache_dir);

// Componentwise reduction over rows. Sum (and therefore mean) accumulates
// each column in sorted value order, so the result is exactly invariant to
// row permutations.
std::vector<double> readout(const FeatureMatrix& f, Readout mode);

// Per-dimension location/scale fitted on training data (population formula).
// Dimensions with zero variance get std = 1 and are flagged as degenerate.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<bool> degenerate;
};

Standardizer standardize_fit(const std::vector<std::vector<double>>& train);
std::vector<double> standardize_apply(const Standardizer& s,
                                      const std::vector<double>& x);

// CSV: graph_id,node_id,f_0..f_{N-1}, one row per node, doubles with 17
// significant digits.
void save_node_features_csv(const std::string& path,
                            const std::vector<FeatureMatrix>& features);

// CSV: graph_id,label,g_0..g_{N-1}; label -1 stands for "absent".
struct GraphFeatureRow {
  int graph_id = 0;
  int label = -1;
  std::vector<double> values;
};

void save_graph_features_csv(const std::string& path,
                             const std::vector<GraphFeatureRow>& rows);
std::vector<GraphFeatureRow> load_graph_features_csv(const std::string& path);

}  // namespace motifconv
