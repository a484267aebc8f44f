#include "motifconv/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "motifconv/rng.hpp"

namespace motifconv {

ExperimentConfig::ExperimentConfig() : kernel(kernel_preset("synthetic")) {}

void split_indices(int size, std::uint64_t seed, std::vector<int>& train,
                   std::vector<int>& val, std::vector<int>& test) {
  if (size < 10) throw std::invalid_argument("split_indices: need at least 10 items");
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);  // split stream, distinct
  shuffle_in_place(idx, rng);                          // from generation
  const int n_train = size * 8 / 10;
  const int n_val = size / 10;
  train.assign(idx.begin(), idx.begin() + n_train);
  val.assign(idx.begin() + n_train, idx.begin() + n_train + n_val);
  test.assign(idx.begin() + n_train + n_val, idx.end());
}

namespace {

struct Split {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // canonical
  std::vector<int> graph_ids;
};

Split collect(const std::vector<int>& indices,
              const std::vector<std::vector<double>>& pooled,
              const std::vector<int>& canonical) {
  Split s;
  s.x.reserve(indices.size());
  s.y.reserve(indices.size());
  for (int i : indices) {
    s.x.push_back(pooled[static_cast<std::size_t>(i)]);
    s.y.push_back(canonical[static_cast<std::size_t>(i)]);
    s.graph_ids.push_back(i);
  }
  return s;
}

std::vector<GraphFeatureRow> to_rows(const Split& s, const std::vector<int>& class_ids) {
  std::vector<GraphFeatureRow> rows;
  rows.reserve(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    GraphFeatureRow r;
    r.graph_id = s.graph_ids[i];
    r.label = class_ids[static_cast<std::size_t>(s.y[i])];
    r.values = s.x[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

ExperimentResult run_synthetic_experiment(const ExperimentConfig& cfg) {
  if (cfg.workers < 1)
    throw std::invalid_argument("run_synthetic_experiment: workers must be >= 1");

  const std::vector<ArgGraph> dataset = generate_dataset(cfg.size, cfg.seed, cfg.synth);

  std::vector<int> train_idx, val_idx, test_idx;
  split_indices(cfg.size, cfg.seed, train_idx, val_idx, test_idx);

  std::vector<ArgGraph> train_graphs;
  train_graphs.reserve(train_idx.size());
  for (int i : train_idx) train_graphs.push_back(dataset[static_cast<std::size_t>(i)]);

  VocabParams vp = cfg.vocab;
  vp.seed = cfg.seed;  // all experiment randomness flows from one seed
  const MotifVocabulary vocab =
      build_vocabulary(train_graphs, vp, cfg.kernel, cfg.match, cfg.workers);

  const std::vector<FeatureMatrix> features = motif_convolve_dataset_cached(
      dataset, vocab, cfg.kernel, cfg.match, cfg.workers, cfg.cache_dir);

  std::vector<std::vector<double>> pooled;
  pooled.reserve(features.size());
  for (const FeatureMatrix& f : features) pooled.push_back(readout(f, cfg.readout_mode));

  std::vector<int> raw_labels;
  raw_labels.reserve(dataset.size());
  for (const ArgGraph& g : dataset) {
    if (!g.label)
      throw std::runtime_error("run_synthetic_experiment: unlabeled graph in dataset");
    raw_labels.push_back(*g.label);
  }
  std::vector<int> class_ids;
  const std::vector<int> canonical = canonical_labels(raw_labels, class_ids);

  Split train = collect(train_idx, pooled, canonical);
  Split val = collect(val_idx, pooled, canonical);
  Split test = collect(test_idx, pooled, canonical);

  const Standardizer scaler = standardize_fit(train.x);
  for (auto* split : {&train, &val, &test})
    for (auto& x : split->x) x = standardize_apply(scaler, x);

  const LogisticModel model = train_logreg(train.x, train.y, cfg.logreg);

  ExperimentResult result;
  result.seed = cfg.seed;
  result.class_ids = class_ids;
  result.vocab = vocab;
  result.train_accuracy = evaluate(model, train.x, train.y);
  result.val_accuracy = evaluate(model, val.x, val.y);
  result.test_accuracy = evaluate(model, test.x, test.y);

  const int n_classes = static_cast<int>(class_ids.size());
  result.confusion.assign(static_cast<std::size_t>(n_classes),
                          std::vector<int>(static_cast<std::size_t>(n_classes), 0));
  std::vector<int> support(static_cast<std::size_t>(n_classes), 0);
  std::vector<int> correct(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t i = 0; i < test.x.size(); ++i) {
    const int truth = test.y[i];
    const int pred = predict(model, test.x[i]);
    result.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(pred)]++;
    support[static_cast<std::size_t>(truth)]++;
    if (pred == truth) correct[static_cast<std::size_t>(truth)]++;
  }
  for (int c = 0; c < n_classes; ++c) {
    ClassAccuracy acc;
    acc.label = class_ids[static_cast<std::size_t>(c)];
    acc.support = support[static_cast<std::size_t>(c)];
    acc.accuracy = support[static_cast<std::size_t>(c)] > 0
                       ? static_cast<double>(correct[static_cast<std::size_t>(c)]) /
                             support[static_cast<std::size_t>(c)]
                       : 0.0;
    result.per_class.push_back(acc);
  }

  result.train_features = to_rows(train, class_ids);
  result.test_features = to_rows(test, class_ids);
  return result;
}

}  // namespace motifconv
