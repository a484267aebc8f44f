#include "motifconv/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "motifconv/graph_io.hpp"
#include "motifconv/neighborhood.hpp"
#include "motifconv/rng.hpp"

namespace motifconv {

namespace {

void check_params(const VocabParams& p) {
  if (p.k < 1) throw std::invalid_argument("vocab params: k must be >= 1");
  if (p.n_motifs < 1) throw std::invalid_argument("vocab params: n_motifs must be >= 1");
  if (p.sample_target < p.n_motifs)
    throw std::invalid_argument("vocab params: sample_target must be >= n_motifs");
  if (p.per_partition_keep < p.n_motifs)
    throw std::invalid_argument("vocab params: per_partition_keep must be >= n_motifs");
  // keep <= partition_size/2 guarantees each partition round shrinks the set
  if (p.per_partition_keep > p.partition_size / 2)
    throw std::invalid_argument(
        "vocab params: per_partition_keep must be <= partition_size / 2");
}

}  // namespace

std::vector<ArgGraph> sample_subgraphs(const std::vector<ArgGraph>& dataset,
                                       const VocabParams& params) {
  if (dataset.empty())
    throw std::invalid_argument("sample_subgraphs: dataset is empty");
  if (params.k < 1 || params.sample_target < 1)
    throw std::invalid_argument("sample_subgraphs: k and sample_target must be >= 1");

  std::mt19937_64 rng(params.seed);
  std::vector<std::vector<bool>> visited;
  visited.reserve(dataset.size());
  for (const ArgGraph& g : dataset)
    visited.emplace_back(static_cast<std::size_t>(g.node_count()), false);

  std::vector<ArgGraph> out;
  out.reserve(static_cast<std::size_t>(params.sample_target));
  const long max_attempts = 20L * params.sample_target;
  std::vector<int> members;
  for (long attempt = 0;
       attempt < max_attempts && static_cast<int>(out.size()) < params.sample_target;
       ++attempt) {
    const std::size_t gi = uniform_index(rng, dataset.size());
    const int v = static_cast<int>(
        uniform_index(rng, static_cast<std::size_t>(dataset[gi].node_count())));
    // 50% downweight for centers already covered by an accepted subgraph
    if (visited[gi][static_cast<std::size_t>(v)] && !bernoulli(rng, 0.5)) continue;
    out.push_back(k_hop_subgraph(dataset[gi], v, params.k, &members));
    for (int m : members) visited[gi][static_cast<std::size_t>(m)] = true;
  }
  return out;
}

std::vector<int> average_linkage_cluster(const Mat& sim, int n_clusters) {
  const int n = sim.rows;
  if (n < 1 || sim.cols != n)
    throw std::invalid_argument("average_linkage_cluster: matrix must be square");
  if (n_clusters < 1 || n_clusters > n)
    throw std::invalid_argument("average_linkage_cluster: n_clusters = " +
                                std::to_string(n_clusters) + " outside [1," +
                                std::to_string(n) + "]");
  for (int i = 0; i < n; ++i) {
    if (std::abs(sim(i, i) - 1.0) > 1e-9)
      throw std::invalid_argument("average_linkage_cluster: diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      const double s = sim(i, j);
      if (!(s >= -1e-9 && s <= 1.0 + 1e-9))
        throw std::invalid_argument("average_linkage_cluster: entries must be in [0,1]");
      if (std::abs(s - sim(j, i)) > 1e-12)
        throw std::invalid_argument("average_linkage_cluster: matrix must be symmetric");
    }
  }

  struct Cluster {
    int size = 0;
    int min_member = 0;
    bool active = false;
  };
  std::vector<Cluster> clusters(static_cast<std::size_t>(n));
  std::vector<int> owner(static_cast<std::size_t>(n));  // item -> cluster slot
  Mat dist(n, n);
  for (int i = 0; i < n; ++i) {
    clusters[static_cast<std::size_t>(i)] = {1, i, true};
    owner[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < n; ++j) dist(i, j) = 1.0 - sim(i, j);
  }

  for (int merges = 0; merges < n - n_clusters; ++merges) {
    double best = std::numeric_limits<double>::infinity();
    int ba = -1, bb = -1;
    std::pair<int, int> best_key{0, 0};
    for (int a = 0; a < n; ++a) {
      if (!clusters[static_cast<std::size_t>(a)].active) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!clusters[static_cast<std::size_t>(b)].active) continue;
        const double d = dist(a, b);
        const int ma = clusters[static_cast<std::size_t>(a)].min_member;
        const int mb = clusters[static_cast<std::size_t>(b)].min_member;
        const std::pair<int, int> key{std::min(ma, mb), std::max(ma, mb)};
        if (d < best || (d == best && key < best_key)) {
          best = d;
          best_key = key;
          ba = a;
          bb = b;
        }
      }
    }
    Cluster& ca = clusters[static_cast<std::size_t>(ba)];
    Cluster& cb = clusters[static_cast<std::size_t>(bb)];
    // average linkage update: size-weighted mean of the two old distances
    for (int c = 0; c < n; ++c) {
      if (!clusters[static_cast<std::size_t>(c)].active || c == ba || c == bb) continue;
      const double d = (ca.size * dist(ba, c) + cb.size * dist(bb, c)) /
                       static_cast<double>(ca.size + cb.size);
      dist(ba, c) = d;
      dist(c, ba) = d;
    }
    ca.size += cb.size;
    ca.min_member = std::min(ca.min_member, cb.min_member);
    cb.active = false;
    for (int& o : owner)
      if (o == bb) o = ba;
  }

  // number surviving clusters by their smallest member index
  std::vector<int> active_slots;
  for (int a = 0; a < n; ++a)
    if (clusters[static_cast<std::size_t>(a)].active) active_slots.push_back(a);
  std::sort(active_slots.begin(), active_slots.end(), [&](int a, int b) {
    return clusters[static_cast<std::size_t>(a)].min_member <
           clusters[static_cast<std::size_t>(b)].min_member;
  });
  std::vector<int> slot_label(static_cast<std::size_t>(n), -1);
  for (int label = 0; label < static_cast<int>(active_slots.size()); ++label)
    slot_label[static_cast<std::size_t>(active_slots[static_cast<std::size_t>(label)])] =
        label;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    labels[static_cast<std::size_t>(i)] =
        slot_label[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])];
  return labels;
}

int select_medoid(const std::vector<int>& members, const Mat& sim) {
  if (members.empty()) throw std::invalid_argument("select_medoid: empty member set");
  int best = -1;
  double best_total = -std::numeric_limits<double>::infinity();
  for (int i : members) {
    if (i < 0 || i >= sim.rows)
      throw std::invalid_argument("select_medoid: member index out of range");
    double total = 0.0;
    for (int j : members)
      if (j != i) total += sim(i, j);
    if (total > best_total) {
      best_total = total;
      best = i;
    }
  }
  return best;
}

namespace {

struct StageItem {
  ArgGraph graph;
  int order;  // index among the originally sampled subgraphs
};

// Cluster `items` into n_clusters and return (medoid, cluster size) pairs in
// cluster-label order.
std::vector<std::pair<StageItem, int>> cluster_stage(const std::vector<StageItem>& items,
                                                     int n_clusters,
                                                     const CompatConfig& cfg,
                                                     const MatchParams& mp, int workers) {
  std::vector<ArgGraph> graphs;
  graphs.reserve(items.size());
  for (const StageItem& it : items) graphs.push_back(it.graph);
  const Mat sim = pairwise_similarity(graphs, cfg, mp, workers);
  const std::vector<int> labels = average_linkage_cluster(sim, n_clusters);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(n_clusters));
  for (int i = 0; i < static_cast<int>(items.size()); ++i)
    members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);

  std::vector<std::pair<StageItem, int>> out;
  out.reserve(static_cast<std::size_t>(n_clusters));
  for (const auto& m : members) {
    const int med = select_medoid(m, sim);
    out.emplace_back(items[static_cast<std::size_t>(med)],
                     static_cast<int>(m.size()));
  }
  return out;
}

}  // namespace

MotifVocabulary build_vocabulary(const std::vector<ArgGraph>& dataset,
                                 const VocabParams& params, const CompatConfig& cfg,
                                 const MatchParams& match_params, int workers) {
  check_params(params);
  if (workers < 1) throw std::invalid_argument("build_vocabulary: workers must be >= 1");

  std::vector<ArgGraph> samples = sample_subgraphs(dataset, params);
  if (static_cast<int>(samples.size()) < params.n_motifs)
    throw std::runtime_error("build_vocabulary: sampled only " +
                             std::to_string(samples.size()) + " subgraphs, need " +
                             std::to_string(params.n_motifs));

  std::vector<StageItem> items;
  items.reserve(samples.size());
  for (int i = 0; i < static_cast<int>(samples.size()); ++i)
    items.push_back({std::move(samples[static_cast<std::size_t>(i)]), i});

  // Batched reduction for large corpora: shuffle, cluster each batch, keep
  // the batch medoids, repeat until one batch remains.
  std::mt19937_64 shuffle_rng(params.seed * 0x9E3779B97F4A7C15ULL + 1);
  while (static_cast<int>(items.size()) > params.partition_size) {
    shuffle_in_place(items, shuffle_rng);
    std::vector<StageItem> next;
    const int total = static_cast<int>(items.size());
    for (int start = 0; start < total; start += params.partition_size) {
      const int stop = std::min(total, start + params.partition_size);
      std::vector<StageItem> batch(items.begin() + start, items.begin() + stop);
      const int keep = std::min<int>(params.per_partition_keep,
                                     static_cast<int>(batch.size()));
      for (auto& [medoid, size] : cluster_stage(batch, keep, cfg, match_params, workers))
        next.push_back(std::move(medoid));
    }
    items = std::move(next);
  }

  auto final_clusters =
      cluster_stage(items, params.n_motifs, cfg, match_params, workers);

  // motif order: descending cluster size, ties by earliest sampled member
  std::vector<int> order(final_clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ca = final_clusters[static_cast<std::size_t>(a)];
    const auto& cb = final_clusters[static_cast<std::size_t>(b)];
    if (ca.second != cb.second) return ca.second > cb.second;
    return ca.first.order < cb.first.order;
  });

  MotifVocabulary vocab;
  vocab.k = params.k;
  vocab.kernel = cfg;
  vocab.seed = params.seed;
  for (int idx : order) {
    auto& [medoid, size] = final_clusters[static_cast<std::size_t>(idx)];
    vocab.motifs.push_back(std::move(medoid.graph));
    vocab.cluster_sizes.push_back(size);
  }
  return vocab;
}

namespace {

nlohmann::json kernel_to_json(const KernelSpec& k) {
  return {{"kind", kernel_kind_name(k.kind)}, {"scale", k.scale}};
}

KernelSpec kernel_from_json(const nlohmann::json& j) {
  KernelSpec k;
  k.kind = kernel_kind_from_name(j.at("kind").get<std::string>());
  k.scale = j.at("scale").get<double>();
  return k;
}

}  // namespace

void save_vocabulary(const std::string& path, const MotifVocabulary& vocab) {
  if (vocab.motifs.empty())
    throw std::invalid_argument("save_vocabulary: vocabulary has no motifs");
  nlohmann::json header{{"k", vocab.k},
                        {"n_motifs", static_cast<int>(vocab.motifs.size())},
                        {"node_kernel", kernel_to_json(vocab.kernel.node_kernel)},
                        {"edge_kernel", kernel_to_json(vocab.kernel.edge_kernel)},
                        {"alpha", vocab.kernel.alpha},
                        {"preset", vocab.kernel.preset},
                        {"seed", vocab.seed},
                        {"cluster_sizes", vocab.cluster_sizes}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_vocabulary: cannot open " + path);
  out << header.dump() << "\n";
  for (const ArgGraph& m : vocab.motifs) out << graph_to_json(m) << "\n";
  if (!out) throw std::runtime_error("save_vocabulary: write failed for " + path);
}

MotifVocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_vocabulary: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_vocabulary: " + path + " is empty");

  MotifVocabulary vocab;
  int n_motifs = 0;
  try {
    const nlohmann::json header = nlohmann::json::parse(line);
    vocab.k = header.at("k").get<int>();
    n_motifs = header.at("n_motifs").get<int>();
    vocab.kernel.node_kernel = kernel_from_json(header.at("node_kernel"));
    vocab.kernel.edge_kernel = kernel_from_json(header.at("edge_kernel"));
    vocab.kernel.alpha = header.at("alpha").get<double>();
    vocab.kernel.preset = header.value("preset", std::string());
    vocab.seed = header.value("seed", std::uint64_t{0});
    vocab.cluster_sizes = header.value("cluster_sizes", std::vector<int>());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_vocabulary: bad header in " + path + ": " + e.what());
  }
  if (vocab.k < 1 || n_motifs < 1)
    throw std::runtime_error("load_vocabulary: bad header in " + path +
                             ": k and n_motifs must be >= 1");

  int line_no = 1;
  while (static_cast<int>(vocab.motifs.size()) < n_motifs && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ArgGraph motif;
    try {
      motif = graph_from_json(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("load_vocabulary: " + path + " line " +
                               std::to_string(line_no) + ": " + e.what());
    }
    if (!motif.center)
      throw std::runtime_error("load_vocabulary: " + path + " line " +
                               std::to_string(line_no) + ": motif has no center");
    vocab.motifs.push_back(std::move(motif));
  }
  if (static_cast<int>(vocab.motifs.size()) != n_motifs)
    throw std::runtime_error("load_vocabulary: " + path + " declares " +
                             std::to_string(n_motifs) + " motifs but holds " +
                             std::to_string(vocab.motifs.size()));
  if (!vocab.cluster_sizes.empty() &&
      vocab.cluster_sizes.size() != vocab.motifs.size())
    throw std::runtime_error("load_vocabulary: " + path +
                             ": cluster_sizes length does not match motif count");
  return vocab;
}

}  // namespace motifconv
