#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "motifconv/classifier.hpp"
#include "motifconv/compat.hpp"
#include "motifconv/convolution.hpp"
#include "motifconv/matching.hpp"
#include "motifconv/synthgen.hpp"
#include "motifconv/vocabulary.hpp"

namespace motifconv {

// End-to-end synthetic benchmark: generate a labeled dataset, split 8:1:1,
// build a motif vocabulary on the training split, convolve, pool, fit a
// standardizer on the training features, train logistic regression, and
// report accuracies. Every random choice derives from `seed`, so a rerun
// with the same config is bit-identical.
struct ExperimentConfig {
  int size = 500;
  std::uint64_t seed = 1;
  SynthParams synth;
  VocabParams vocab;  // vocab.seed is ignored; sampling derives from `seed`
  CompatConfig kernel;
  MatchParams match;
  Readout readout_mode = Readout::Max;
  LogregHyper logreg;
  int workers = 1;
  std::string cache_dir;

  ExperimentConfig();
};

struct ClassAccuracy {
  int label = 0;  // original template id
  int support = 0;
  double accuracy = 0.0;
};

struct ExperimentResult {
  std::uint64_t seed = 0;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::vector<ClassAccuracy> per_class;       // on the test split
  std::vector<std::vector<int>> confusion;    // test: [true class][predicted]
  std::vector<int> class_ids;                 // canonical class -> label
  MotifVocabulary vocab;
  std::vector<GraphFeatureRow> train_features;  // standardized readout vectors
  std::vector<GraphFeatureRow> test_features;
};

ExperimentResult run_synthetic_experiment(const ExperimentConfig& cfg);

// Deterministic 8:1:1 index split used by the experiment.
void split_indices(int size, std::uint64_t seed, std::vector<int>& train,
                   std::vector<int>& val, std::vector<int>& test);

}  // namespace motifconv
