// motifconv: one binary, eight subcommands, wiring the library into
// reproducible pipelines. Outputs are plain text/CSV so runs are diffable.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "motifconv/classifier.hpp"
#include "motifconv/compat.hpp"
#include "motifconv/convolution.hpp"
#include "motifconv/experiment.hpp"
#include "motifconv/graph_io.hpp"
#include "motifconv/matching.hpp"
#include "motifconv/synthgen.hpp"
#include "motifconv/vocabulary.hpp"

using namespace motifconv;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

// shared flag bundles -------------------------------------------------------

struct KernelFlags {
  std::string preset = "synthetic";
  double alpha = 0.7;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kernel", preset, "kernel preset: synthetic|molecular|qm9")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "node-term weight in the similarity score")
        ->capture_default_str();
  }
  CompatConfig resolve() const {
    CompatConfig cfg = kernel_preset(preset);
    cfg.alpha = alpha;
    return cfg;
  }
};

struct MatchFlags {
  MatchParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beta0", params.beta0, "annealing start temperature")
        ->capture_default_str();
    cmd->add_option("--beta-f", params.beta_f, "annealing final temperature")
        ->capture_default_str();
    cmd->add_option("--beta-r", params.beta_r, "annealing growth rate")
        ->capture_default_str();
    cmd->add_option("--sinkhorn-max-iters", params.sinkhorn_max_iters,
                    "normalization pass cap per temperature")
        ->capture_default_str();
    cmd->add_option("--sinkhorn-tol", params.sinkhorn_tol,
                    "normalization entry-change stopping tolerance")
        ->capture_default_str();
  }
};

struct VocabFlags {
  VocabParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", params.k, "neighborhood radius (hops)")->capture_default_str();
    cmd->add_option("--samples", params.sample_target, "subgraphs sampled for clustering")
        ->capture_default_str();
    cmd->add_option("--motifs", params.n_motifs, "vocabulary size N")->capture_default_str();
    cmd->add_option("--partition-size", params.partition_size,
                    "pairwise-matching partition bound")
        ->capture_default_str();
    cmd->add_option("--keep-per-partition", params.per_partition_keep,
                    "medoids kept from each partition round")
        ->capture_default_str();
  }
};

struct SynthFlags {
  SynthParams params;
  std::string attach_policy = "one";

  void attach(CLI::App* cmd) {
    cmd->add_option("--noise", params.noise_sigma, "node-attribute noise stddev")
        ->capture_default_str();
    cmd->add_option("--extra-trials", params.extra_node_trials,
                    "binomial trials for added nodes")
        ->capture_default_str();
    cmd->add_option("--extra-p", params.extra_node_p, "binomial success probability")
        ->capture_default_str();
    cmd->add_option("--attach-policy", attach_policy, "added-node attachment: one|none")
        ->capture_default_str();
  }
  SynthParams resolve() const {
    SynthParams p = params;
    p.attach = attach_policy_from_name(attach_policy);
    return p;
  }
};

// subcommands ---------------------------------------------------------------

void print_pairs(const HardAssignment& h) {
  std::vector<std::pair<int, int>> pairs = h.pairs;
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [u, i] : pairs) std::printf("pair %d -> %d\n", u, i);
}

void run_match(const std::string& path_a, const std::string& path_b,
               const KernelFlags& kernel, const MatchFlags& match) {
  const ArgGraph a = load_graph(path_a);
  const ArgGraph b = load_graph(path_b);
  const MatchResult r = match_and_score(a, b, kernel.resolve(), match.params);
  std::printf("%.6f\n", r.score);
  print_pairs(r.assignment);
}

void run_pairwise(const std::string& dataset_path, const KernelFlags& kernel,
                  const MatchFlags& match, int workers, const std::string& out_path) {
  const std::vector<ArgGraph> graphs = load_dataset(dataset_path);
  const Mat sim = pairwise_similarity(graphs, kernel.resolve(), match.params, workers);

  std::ofstream out = open_out(out_path);
  out << "graph";
  for (int j = 0; j < sim.cols; ++j) out << "," << j;
  out << "\n";
  for (int i = 0; i < sim.rows; ++i) {
    out << i;
    for (int j = 0; j < sim.cols; ++j) {
      out << ",";
      if (j >= i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", sim(i, j));
        out << buf;
      }
    }
    out << "\n";
  }
  std::printf("wrote %dx%d upper-triangular similarity matrix to %s\n", sim.rows, sim.cols,
              out_path.c_str());
}

void run_vocab(const std::string& dataset_path, const KernelFlags& kernel,
               const MatchFlags& match, VocabParams vocab_params, std::uint64_t seed,
               int workers, const std::string& out_path) {
  const std::vector<ArgGraph> graphs = load_dataset(dataset_path);
  vocab_params.seed = seed;
  const MotifVocabulary vocab =
      build_vocabulary(graphs, vocab_params, kernel.resolve(), match.params, workers);
  save_vocabulary(out_path, vocab);

  std::printf("vocabulary: %zu motifs (k=%d, kernel=%s, seed=%llu) -> %s\n",
              vocab.motifs.size(), vocab.k, vocab.kernel.preset.c_str(),
              static_cast<unsigned long long>(vocab.seed), out_path.c_str());
  for (std::size_t m = 0; m < vocab.motifs.size(); ++m)
    std::printf("motif %zu: %d nodes, %d edges, cluster size %d\n", m,
                vocab.motifs[m].node_count(), vocab.motifs[m].edge_count(),
                vocab.cluster_sizes[m]);
}

void run_convolve(const std::string& dataset_path, const std::string& vocab_path,
                  const std::string& kernel_preset_flag, double alpha_flag,
                  bool kernel_given, const MatchFlags& match, int workers,
                  const std::string& readout_flag, const std::string& cache_dir,
                  const std::string& out_path) {
  const std::vector<ArgGraph> graphs = load_dataset(dataset_path);
  const MotifVocabulary vocab = load_vocabulary(vocab_path);

  CompatConfig cfg = vocab.kernel;
  if (kernel_given) {
    cfg = kernel_preset(kernel_preset_flag);
    cfg.alpha = alpha_flag;
  }

  const std::vector<FeatureMatrix> features =
      motif_convolve_dataset_cached(graphs, vocab, cfg, match.params, workers, cache_dir);

  if (readout_flag.empty()) {
    save_node_features_csv(out_path, features);
    std::printf("wrote per-node features for %zu graphs to %s\n", features.size(),
                out_path.c_str());
    return;
  }

  const Readout mode = readout_from_name(readout_flag);
  std::vector<GraphFeatureRow> rows;
  rows.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    GraphFeatureRow row;
    row.graph_id = features[i].graph_id;
    row.label = graphs[i].label.value_or(-1);
    row.values = readout(features[i], mode);
    rows.push_back(std::move(row));
  }
  save_graph_features_csv(out_path, rows);
  std::printf("wrote %s-pooled graph features for %zu graphs to %s\n", readout_flag.c_str(),
              rows.size(), out_path.c_str());
}

void print_classification_report(const LogisticModel& model,
                                 const std::vector<std::vector<double>>& test_x,
                                 const std::vector<int>& test_y, double train_accuracy) {
  const int n_classes = model.n_classes;
  std::vector<std::vector<int>> confusion(
      static_cast<std::size_t>(n_classes),
      std::vector<int>(static_cast<std::size_t>(n_classes), 0));
  int correct = 0;
  for (std::size_t i = 0; i < test_x.size(); ++i) {
    const int pred = predict(model, test_x[i]);
    confusion[static_cast<std::size_t>(test_y[i])][static_cast<std::size_t>(pred)]++;
    if (pred == test_y[i]) ++correct;
  }

  std::printf("overall train accuracy %.4f\n", train_accuracy);
  std::printf("overall test accuracy %.4f\n",
              test_x.empty() ? 0.0 : static_cast<double>(correct) / test_x.size());
  for (int c = 0; c < n_classes; ++c) {
    int support = 0;
    for (int p = 0; p < n_classes; ++p)
      support += confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)];
    const int hit = confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    std::printf("class %d: support %d accuracy %.4f\n",
                model.class_ids[static_cast<std::size_t>(c)], support,
                support > 0 ? static_cast<double>(hit) / support : 0.0);
  }
  std::printf("confusion matrix (rows true, cols predicted):\n");
  std::printf("%8s", "");
  for (int p = 0; p < n_classes; ++p)
    std::printf("%8d", model.class_ids[static_cast<std::size_t>(p)]);
  std::printf("\n");
  for (int c = 0; c < n_classes; ++c) {
    std::printf("%8d", model.class_ids[static_cast<std::size_t>(c)]);
    for (int p = 0; p < n_classes; ++p)
      std::printf("%8d", confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)]);
    std::printf("\n");
  }
}

void run_classify(const std::string& train_path, const std::string& test_path,
                  const LogregHyper& hyper) {
  const std::vector<GraphFeatureRow> train_rows = load_graph_features_csv(train_path);
  const std::vector<GraphFeatureRow> test_rows = load_graph_features_csv(test_path);
  if (train_rows.empty()) throw std::runtime_error(train_path + " has no feature rows");

  std::vector<std::vector<double>> train_x;
  std::vector<int> raw_labels;
  for (const GraphFeatureRow& r : train_rows) {
    if (r.label < 0)
      throw std::runtime_error(train_path + ": row for graph " +
                               std::to_string(r.graph_id) + " has no label");
    train_x.push_back(r.values);
    raw_labels.push_back(r.label);
  }
  std::vector<int> class_ids;
  const std::vector<int> train_y = canonical_labels(raw_labels, class_ids);

  LogisticModel model = train_logreg(train_x, train_y, hyper);
  model.class_ids = class_ids;  // report under the original labels
  const double train_accuracy = evaluate(model, train_x, train_y);

  std::vector<std::vector<double>> test_x;
  std::vector<int> test_y;
  for (const GraphFeatureRow& r : test_rows) {
    const auto it = std::find(class_ids.begin(), class_ids.end(), r.label);
    if (it == class_ids.end())
      throw std::runtime_error(test_path + ": label " + std::to_string(r.label) +
                               " never appears in the training features");
    test_x.push_back(r.values);
    test_y.push_back(static_cast<int>(it - class_ids.begin()));
  }
  print_classification_report(model, test_x, test_y, train_accuracy);
}

void run_synth(int size, std::uint64_t seed, const SynthFlags& synth,
               const std::string& out_path, const std::string& templates_path) {
  if (!templates_path.empty()) {
    std::vector<ArgGraph> bases;
    for (const Template& t : builtin_templates()) bases.push_back(t.base);
    save_dataset(templates_path, bases);
    std::printf("wrote %zu templates to %s\n", bases.size(), templates_path.c_str());
  }
  if (!out_path.empty()) {
    const std::vector<ArgGraph> dataset = generate_dataset(size, seed, synth.resolve());
    save_dataset(out_path, dataset);
    std::printf("wrote %zu labeled graphs (seed %llu) to %s\n", dataset.size(),
                static_cast<unsigned long long>(seed), out_path.c_str());
  }
  if (out_path.empty() && templates_path.empty())
    throw std::runtime_error("synth: nothing to do (pass --out and/or --emit-templates)");
}

void run_experiment(int size, const std::vector<std::uint64_t>& seeds,
                    const KernelFlags& kernel, const MatchFlags& match,
                    const VocabFlags& vocab, const SynthFlags& synth,
                    const LogregHyper& hyper, const std::string& readout_flag, int workers,
                    const std::string& cache_dir, const std::string& train_features_out,
                    const std::string& test_features_out) {
  if (seeds.empty()) throw std::runtime_error("experiment-synthetic: need >= 1 seed");

  ExperimentConfig cfg;
  cfg.size = size;
  cfg.synth = synth.resolve();
  cfg.vocab = vocab.params;
  cfg.kernel = kernel.resolve();
  cfg.match = match.params;
  cfg.readout_mode = readout_from_name(readout_flag);
  cfg.logreg = hyper;
  cfg.workers = workers;
  cfg.cache_dir = cache_dir;

  std::printf(
      "config: size=%d kernel=%s alpha=%g k=%d samples=%d motifs=%d partition=%d keep=%d "
      "readout=%s noise=%g extra-trials=%d extra-p=%g attach=%s beta0=%g beta-f=%g "
      "beta-r=%g sinkhorn-max-iters=%d sinkhorn-tol=%g lr=%g epochs=%d l2=%g workers=%d "
      "cache=%s\n",
      cfg.size, cfg.kernel.preset.c_str(), cfg.kernel.alpha, cfg.vocab.k,
      cfg.vocab.sample_target, cfg.vocab.n_motifs, cfg.vocab.partition_size,
      cfg.vocab.per_partition_keep, readout_flag.c_str(), cfg.synth.noise_sigma,
      cfg.synth.extra_node_trials, cfg.synth.extra_node_p,
      attach_policy_name(cfg.synth.attach).c_str(), cfg.match.beta0, cfg.match.beta_f,
      cfg.match.beta_r, cfg.match.sinkhorn_max_iters, cfg.match.sinkhorn_tol,
      cfg.logreg.lr, cfg.logreg.epochs, cfg.logreg.l2, cfg.workers,
      cfg.cache_dir.empty() ? "(none)" : cfg.cache_dir.c_str());

  double test_sum = 0.0;
  for (std::uint64_t seed : seeds) {
    const auto t0 = Clock::now();
    cfg.seed = seed;
    const ExperimentResult r = run_synthetic_experiment(cfg);
    test_sum += r.test_accuracy;
    std::printf("seed %llu: train %.4f val %.4f test %.4f (%.1fs)\n",
                static_cast<unsigned long long>(seed), r.train_accuracy, r.val_accuracy,
                r.test_accuracy, elapsed_s(t0));
    for (const ClassAccuracy& c : r.per_class)
      std::printf("  class %d: support %d accuracy %.4f\n", c.label, c.support, c.accuracy);

    if (seed == seeds.front()) {
      if (!train_features_out.empty())
        save_graph_features_csv(train_features_out, r.train_features);
      if (!test_features_out.empty())
        save_graph_features_csv(test_features_out, r.test_features);
    }
  }
  std::printf("mean test accuracy over %zu seed(s): %.4f\n", seeds.size(),
              test_sum / static_cast<double>(seeds.size()));
}

void run_bench(const std::string& dataset_path, const KernelFlags& kernel,
               const MatchFlags& match, const std::vector<int>& worker_counts,
               const std::string& out_path) {
  if (worker_counts.empty()) throw std::runtime_error("bench: need >= 1 worker count");
  const std::vector<ArgGraph> graphs = load_dataset(dataset_path);
  const std::size_t pairs = graphs.size() * (graphs.size() - 1) / 2;

  std::ofstream out = open_out(out_path);
  out << "workers,pairs,seconds,identical_to_first\n";
  Mat reference;
  for (std::size_t wi = 0; wi < worker_counts.size(); ++wi) {
    const int w = worker_counts[wi];
    const auto t0 = Clock::now();
    Mat m = pairwise_similarity(graphs, kernel.resolve(), match.params, w);
    const double secs = elapsed_s(t0);
    const bool identical =
        wi == 0 || (m.rows == reference.rows && m.cols == reference.cols &&
                    m.a == reference.a);
    if (wi == 0) reference = std::move(m);
    char line[128];
    std::snprintf(line, sizeof line, "%d,%zu,%.3f,%d\n", w, pairs, secs,
                  identical ? 1 : 0);
    out << line;
    std::printf("workers %d: %zu pairs in %.3fs%s\n", w, pairs, secs,
                identical ? "" : " (MISMATCH vs first run)");
  }
  std::printf("wrote timings to %s\n", out_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motif convolution toolkit for attributed relational graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand name
  app.set_config("--config", "", "read option defaults from a TOML/INI file");

  // match ---------------------------------------------------------------
  auto* match_cmd = app.add_subcommand("match", "score two graphs with the matcher");
  auto match_a = std::make_shared<std::string>();
  auto match_b = std::make_shared<std::string>();
  auto match_kernel = std::make_shared<KernelFlags>();
  auto match_flags = std::make_shared<MatchFlags>();
  match_cmd->add_option("--graph-a", *match_a, "first graph file")->required();
  match_cmd->add_option("--graph-b", *match_b, "second graph file")->required();
  match_kernel->attach(match_cmd);
  match_flags->attach(match_cmd);
  match_cmd->callback(
      [=]() { run_match(*match_a, *match_b, *match_kernel, *match_flags); });

  // pairwise ------------------------------------------------------------
  auto* pairwise_cmd =
      app.add_subcommand("pairwise", "similarity matrix over a whole dataset");
  auto pw_dataset = std::make_shared<std::string>();
  auto pw_out = std::make_shared<std::string>();
  auto pw_workers = std::make_shared<int>(1);
  auto pw_kernel = std::make_shared<KernelFlags>();
  auto pw_match = std::make_shared<MatchFlags>();
  pairwise_cmd->add_option("--dataset", *pw_dataset, "dataset file")->required();
  pairwise_cmd->add_option("--out", *pw_out, "output CSV")->required();
  pairwise_cmd->add_option("--workers", *pw_workers, "worker threads")
      ->capture_default_str();
  pw_kernel->attach(pairwise_cmd);
  pw_match->attach(pairwise_cmd);
  pairwise_cmd->callback(
      [=]() { run_pairwise(*pw_dataset, *pw_kernel, *pw_match, *pw_workers, *pw_out); });

  // vocab ---------------------------------------------------------------
  auto* vocab_cmd = app.add_subcommand("vocab", "build a motif vocabulary");
  auto vb_dataset = std::make_shared<std::string>();
  auto vb_out = std::make_shared<std::string>();
  auto vb_seed = std::make_shared<std::uint64_t>(42);
  auto vb_workers = std::make_shared<int>(1);
  auto vb_kernel = std::make_shared<KernelFlags>();
  auto vb_match = std::make_shared<MatchFlags>();
  auto vb_flags = std::make_shared<VocabFlags>();
  vocab_cmd->add_option("--dataset", *vb_dataset, "dataset file")->required();
  vocab_cmd->add_option("--out", *vb_out, "vocabulary output file")->required();
  vocab_cmd->add_option("--seed", *vb_seed, "sampling seed")->capture_default_str();
  vocab_cmd->add_option("--workers", *vb_workers, "worker threads")->capture_default_str();
  vb_kernel->attach(vocab_cmd);
  vb_match->attach(vocab_cmd);
  vb_flags->attach(vocab_cmd);
  vocab_cmd->callback([=]() {
    run_vocab(*vb_dataset, *vb_kernel, *vb_match, vb_flags->params, *vb_seed, *vb_workers,
              *vb_out);
  });

  // convolve ------------------------------------------------------------
  auto* conv_cmd =
      app.add_subcommand("convolve", "motif-convolution features for a dataset");
  auto cv_dataset = std::make_shared<std::string>();
  auto cv_vocab = std::make_shared<std::string>();
  auto cv_out = std::make_shared<std::string>();
  auto cv_readout = std::make_shared<std::string>();
  auto cv_cache = std::make_shared<std::string>();
  auto cv_workers = std::make_shared<int>(1);
  auto cv_kernel = std::make_shared<KernelFlags>();
  auto cv_match = std::make_shared<MatchFlags>();
  conv_cmd->add_option("--dataset", *cv_dataset, "dataset file")->required();
  conv_cmd->add_option("--vocab", *cv_vocab, "vocabulary file")->required();
  conv_cmd->add_option("--out", *cv_out, "output CSV")->required();
  conv_cmd->add_option("--readout", *cv_readout,
                       "pool node rows into graph vectors: max|mean|sum");
  conv_cmd->add_option("--cache", *cv_cache, "feature cache directory")
      ->envname("MOTIFCONV_CACHE");
  conv_cmd->add_option("--workers", *cv_workers, "worker threads")->capture_default_str();
  CLI::Option* cv_kernel_opt =
      conv_cmd->add_option("--kernel", cv_kernel->preset,
                           "kernel preset override (must match the vocabulary)");
  conv_cmd->add_option("--alpha", cv_kernel->alpha, "node-term weight override")
      ->capture_default_str();
  cv_match->attach(conv_cmd);
  conv_cmd->callback([=]() {
    run_convolve(*cv_dataset, *cv_vocab, cv_kernel->preset, cv_kernel->alpha,
                 cv_kernel_opt->count() > 0, *cv_match, *cv_workers, *cv_readout,
                 *cv_cache, *cv_out);
  });

  // classify ------------------------------------------------------------
  auto* cls_cmd =
      app.add_subcommand("classify", "train/evaluate logistic regression on features");
  auto cl_train = std::make_shared<std::string>();
  auto cl_test = std::make_shared<std::string>();
  auto cl_hyper = std::make_shared<LogregHyper>();
  cls_cmd->add_option("--train-features", *cl_train, "training feature CSV")->required();
  cls_cmd->add_option("--test-features", *cl_test, "evaluation feature CSV")->required();
  cls_cmd->add_option("--lr", cl_hyper->lr, "learning rate")->capture_default_str();
  cls_cmd->add_option("--epochs", cl_hyper->epochs, "full-batch epochs")
      ->capture_default_str();
  cls_cmd->add_option("--l2", cl_hyper->l2, "L2 penalty")->capture_default_str();
  cls_cmd->callback([=]() { run_classify(*cl_train, *cl_test, *cl_hyper); });

  // synth ---------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "generate the synthetic benchmark data");
  auto sy_size = std::make_shared<int>(500);
  auto sy_seed = std::make_shared<std::uint64_t>(1);
  auto sy_out = std::make_shared<std::string>();
  auto sy_templates = std::make_shared<std::string>();
  auto sy_flags = std::make_shared<SynthFlags>();
  synth_cmd->add_option("--size", *sy_size, "dataset size")->capture_default_str();
  synth_cmd->add_option("--seed", *sy_seed, "generation seed")->capture_default_str();
  synth_cmd->add_option("--out", *sy_out, "dataset output file");
  synth_cmd->add_option("--emit-templates", *sy_templates,
                        "write the 5 class templates to this file");
  sy_flags->attach(synth_cmd);
  synth_cmd->callback(
      [=]() { run_synth(*sy_size, *sy_seed, *sy_flags, *sy_out, *sy_templates); });

  // experiment-synthetic --------------------------------------------------
  auto* exp_cmd = app.add_subcommand(
      "experiment-synthetic", "end-to-end synthetic classification benchmark");
  auto ex_size = std::make_shared<int>(500);
  auto ex_seeds = std::make_shared<std::vector<std::uint64_t>>(std::vector<std::uint64_t>{1});
  auto ex_readout = std::make_shared<std::string>("max");
  auto ex_workers = std::make_shared<int>(1);
  auto ex_cache = std::make_shared<std::string>();
  auto ex_train_out = std::make_shared<std::string>();
  auto ex_test_out = std::make_shared<std::string>();
  auto ex_kernel = std::make_shared<KernelFlags>();
  auto ex_match = std::make_shared<MatchFlags>();
  auto ex_vocab = std::make_shared<VocabFlags>();
  auto ex_synth = std::make_shared<SynthFlags>();
  auto ex_hyper = std::make_shared<LogregHyper>();
  exp_cmd->add_option("--size", *ex_size, "dataset size")->capture_default_str();
  exp_cmd->add_option("--seeds", *ex_seeds, "comma-separated experiment seeds")
      ->delimiter(',')
      ->capture_default_str();
  exp_cmd->add_option("--readout", *ex_readout, "graph readout: max|mean|sum")
      ->capture_default_str();
  exp_cmd->add_option("--workers", *ex_workers, "worker threads")->capture_default_str();
  exp_cmd->add_option("--cache", *ex_cache, "feature cache directory")
      ->envname("MOTIFCONV_CACHE");
  exp_cmd->add_option("--train-features-out", *ex_train_out,
                      "write the first seed's standardized training features here");
  exp_cmd->add_option("--test-features-out", *ex_test_out,
                      "write the first seed's standardized test features here");
  exp_cmd->add_option("--lr", ex_hyper->lr, "learning rate")->capture_default_str();
  exp_cmd->add_option("--epochs", ex_hyper->epochs, "full-batch epochs")
      ->capture_default_str();
  exp_cmd->add_option("--l2", ex_hyper->l2, "L2 penalty")->capture_default_str();
  ex_kernel->attach(exp_cmd);
  ex_match->attach(exp_cmd);
  ex_vocab->attach(exp_cmd);
  ex_synth->attach(exp_cmd);
  exp_cmd->callback([=]() {
    run_experiment(*ex_size, *ex_seeds, *ex_kernel, *ex_match, *ex_vocab, *ex_synth,
                   *ex_hyper, *ex_readout, *ex_workers, *ex_cache, *ex_train_out,
                   *ex_test_out);
  });

  // bench -----------------------------------------------------------------
  auto* bench_cmd =
      app.add_subcommand("bench", "time pairwise matching across worker counts");
  auto bn_dataset = std::make_shared<std::string>();
  auto bn_out = std::make_shared<std::string>();
  auto bn_workers =
      std::make_shared<std::vector<int>>(std::vector<int>{1, 2, 4, 8});
  auto bn_kernel = std::make_shared<KernelFlags>();
  auto bn_match = std::make_shared<MatchFlags>();
  bench_cmd->add_option("--dataset", *bn_dataset, "dataset file")->required();
  bench_cmd->add_option("--out", *bn_out, "timing CSV output")->required();
  bench_cmd->add_option("--workers", *bn_workers, "comma-separated worker counts")
      ->delimiter(',')
      ->capture_default_str();
  bn_kernel->attach(bench_cmd);
  bn_match->attach(bench_cmd);
  bench_cmd->callback(
      [=]() { run_bench(*bn_dataset, *bn_kernel, *bn_match, *bn_workers, *bn_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
