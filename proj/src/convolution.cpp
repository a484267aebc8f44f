#include "motifconv/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <json.hpp>

#include "motifconv/graph_io.hpp"
#include "motifconv/neighborhood.hpp"
#include "motifconv/parallel.hpp"

namespace motifconv {

Readout readout_from_name(const std::string& name) {
  if (name == "max") return Readout::Max;
  if (name == "mean") return Readout::Mean;
  if (name == "sum") return Readout::Sum;
  throw std::invalid_argument("unknown readout '" + name + "' (use max|mean|sum)");
}

std::string readout_name(Readout mode) {
  switch (mode) {
    case Readout::Max: return "max";
    case Readout::Mean: return "mean";
    case Readout::Sum: return "sum";
  }
  return "max";
}

namespace {

void check_vocab(const MotifVocabulary& vocab, const CompatConfig& cfg) {
  if (vocab.motifs.empty())
    throw std::invalid_argument("motif convolution: vocabulary is empty");
  if (vocab.k < 1)
    throw std::invalid_argument("motif convolution: vocabulary radius k must be >= 1");
  if (!same_kernel_config(vocab.kernel, cfg))
    throw std::invalid_argument(
        "motif convolution: kernel config (" + describe_kernel_config(cfg) +
        ") does not match the vocabulary's (" + describe_kernel_config(vocab.kernel) +
        ")");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<double> motif_convolve_node(const ArgGraph& g, int v,
                                        const MotifVocabulary& vocab,
                                        const CompatConfig& cfg,
                                        const MatchParams& match_params) {
  check_vocab(vocab, cfg);
  const ArgGraph sub = k_hop_subgraph(g, v, vocab.k);
  std::vector<double> scores;
  scores.reserve(vocab.motifs.size());
  for (const ArgGraph& motif : vocab.motifs)
    scores.push_back(match_and_score(sub, motif, cfg, match_params).score);
  return scores;
}

std::vector<FeatureMatrix> motif_convolve_dataset(const std::vector<ArgGraph>& graphs,
                                                  const MotifVocabulary& vocab,
                                                  const CompatConfig& cfg,
                                                  const MatchParams& match_params,
                                                  int workers) {
  check_vocab(vocab, cfg);
  if (workers < 1)
    throw std::invalid_argument("motif_convolve_dataset: workers must be >= 1");

  const int n_motifs = static_cast<int>(vocab.motifs.size());
  std::vector<FeatureMatrix> features(graphs.size());
  std::vector<std::vector<ArgGraph>> subs(graphs.size());

  // (graph, node) pairs flattened so one task = one (neighborhood, motif)
  // score; disjoint writes keep the result worker-count independent.
  struct Slot {
    int graph;
    int node;
  };
  std::vector<Slot> slots;
  for (int gi = 0; gi < static_cast<int>(graphs.size()); ++gi) {
    const ArgGraph& g = graphs[static_cast<std::size_t>(gi)];
    g.validate();
    features[static_cast<std::size_t>(gi)].graph_id = gi;
    features[static_cast<std::size_t>(gi)].rows.assign(
        static_cast<std::size_t>(g.node_count()),
        std::vector<double>(static_cast<std::size_t>(n_motifs), 0.0));
    subs[static_cast<std::size_t>(gi)].reserve(static_cast<std::size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) {
      subs[static_cast<std::size_t>(gi)].push_back(k_hop_subgraph(g, v, vocab.k));
      slots.push_back({gi, v});
    }
  }

  parallel_for(slots.size() * static_cast<std::size_t>(n_motifs), workers,
               [&](std::size_t task) {
                 const Slot& s = slots[task / static_cast<std::size_t>(n_motifs)];
                 const int m = static_cast<int>(task % static_cast<std::size_t>(n_motifs));
                 const double score =
                     match_and_score(
                         subs[static_cast<std::size_t>(s.graph)]
                             [static_cast<std::size_t>(s.node)],
                         vocab.motifs[static_cast<std::size_t>(m)], cfg, match_params)
                         .score;
                 features[static_cast<std::size_t>(s.graph)]
                     .rows[static_cast<std::size_t>(s.node)][static_cast<std::size_t>(m)] =
                     score;
               });
  return features;
}

FeatureMatrix motif_convolve_graph(const ArgGraph& g, const MotifVocabulary& vocab,
                                   const CompatConfig& cfg,
                                   const MatchParams& match_params, int workers,
                                   int graph_id) {
  FeatureMatrix f =
      std::move(motif_convolve_dataset({g}, vocab, cfg, match_params, workers)[0]);
  f.graph_id = graph_id;
  return f;
}

namespace {

// FNV-1a over every input that determines the feature values.
struct Hasher {
  std::uint64_t h = 1469598103934665603ULL;
  void feed(const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    feed_byte(0xFF);  // separator so field boundaries matter
  }
  void feed_byte(unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  }
};

std::string cache_key(const std::vector<ArgGraph>& graphs, const MotifVocabulary& vocab,
                      const CompatConfig& cfg, const MatchParams& mp) {
  Hasher hasher;
  hasher.feed("features-v1");
  hasher.feed(std::to_string(vocab.k));
  hasher.feed(describe_kernel_config(cfg));
  hasher.feed(format_double(mp.beta0));
  hasher.feed(format_double(mp.beta_f));
  hasher.feed(format_double(mp.beta_r));
  hasher.feed(std::to_string(mp.sinkhorn_max_iters));
  hasher.feed(format_double(mp.sinkhorn_tol));
  for (const ArgGraph& m : vocab.motifs) hasher.feed(graph_to_json(m));
  for (const ArgGraph& g : graphs) hasher.feed(graph_to_json(g));
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hasher.h));
  return buf;
}

bool load_cached_features(const std::string& path, std::size_t n_graphs,
                          std::size_t n_motifs, std::vector<FeatureMatrix>& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::vector<FeatureMatrix> loaded;
  loaded.reserve(n_graphs);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    FeatureMatrix f;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      f.graph_id = j.at("graph_id").get<int>();
      f.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception&) {
      return false;  // stale or corrupt cache entry: recompute
    }
    for (const auto& row : f.rows)
      if (row.size() != n_motifs) return false;
    loaded.push_back(std::move(f));
  }
  if (loaded.size() != n_graphs) return false;
  out = std::move(loaded);
  return true;
}

void store_cached_features(const std::string& dir, const std::string& final_path,
                           const std::vector<FeatureMatrix>& features) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string tmp_path =
      (fs::path(dir) / ("tmp-" + std::to_string(::getpid()) + ".part")).string();
  {
    std::ofstream out(tmp_path);
    if (!out) throw std::runtime_error("feature cache: cannot write " + tmp_path);
    for (const FeatureMatrix& f : features) {
      nlohmann::json j{{"graph_id", f.graph_id}, {"rows", f.rows}};
      out << j.dump() << "\n";
    }
    if (!out) throw std::runtime_error("feature cache: write failed for " + tmp_path);
  }
  fs::rename(tmp_path, final_path);
}

}  // namespace

std::vector<FeatureMatrix> motif_convolve_dataset_cached(
    const std::vector<ArgGraph>& graphs, const MotifVocabulary& vocab,
    const CompatConfig& cfg, const MatchParams& match_params, int workers,
    const std::string& cache_dir) {
  if (cache_dir.empty())
    return motif_convolve_dataset(graphs, vocab, cfg, match_params, workers);
  check_vocab(vocab, cfg);

  const std::string key = cache_key(graphs, vocab, cfg, match_params);
  const std::string path =
      (std::filesystem::path(cache_dir) / ("features-" + key + ".jsonl")).string();

  std::vector<FeatureMatrix> features;
  if (load_cached_features(path, graphs.size(), vocab.motifs.size(), features))
    return features;

  features = motif_convolve_dataset(graphs, vocab, cfg, match_params, workers);
  store_cached_features(cache_dir, path, features);
  return features;
}

std::vector<double> readout(const FeatureMatrix& f, Readout mode) {
  if (f.rows.empty()) throw std::invalid_argument("readout: empty feature matrix");
  const std::size_t width = f.rows.front().size();
  for (const auto& row : f.rows)
    if (row.size() != width)
      throw std::invalid_argument("readout: ragged feature matrix");

  std::vector<double> out(width, 0.0);
  std::vector<double> column(f.rows.size());
  for (std::size_t j = 0; j < width; ++j) {
    for (std::size_t i = 0; i < f.rows.size(); ++i) column[i] = f.rows[i][j];
    if (mode == Readout::Max) {
      out[j] = *std::max_element(column.begin(), column.end());
    } else {
      // summation order fixed by sorting, so any row permutation gives a
      // bit-identical sum
      std::sort(column.begin(), column.end());
      double sum = 0.0;
      for (double x : column) sum += x;
      out[j] = mode == Readout::Sum ? sum : sum / static_cast<double>(column.size());
    }
  }
  return out;
}

Standardizer standardize_fit(const std::vector<std::vector<double>>& train) {
  if (train.empty()) throw std::invalid_argument("standardize_fit: empty training set");
  const std::size_t dim = train.front().size();
  for (const auto& x : train)
    if (x.size() != dim)
      throw std::invalid_argument("standardize_fit: inconsistent dimensions");

  Standardizer s;
  s.mean.assign(dim, 0.0);
  s.stddev.assign(dim, 0.0);
  s.degenerate.assign(dim, false);
  const double count = static_cast<double>(train.size());
  for (const auto& x : train)
    for (std::size_t j = 0; j < dim; ++j) s.mean[j] += x[j];
  for (std::size_t j = 0; j < dim; ++j) s.mean[j] /= count;
  for (const auto& x : train)
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = x[j] - s.mean[j];
      s.stddev[j] += d * d;
    }
  for (std::size_t j = 0; j < dim; ++j) {
    s.stddev[j] = std::sqrt(s.stddev[j] / count);
    if (!(s.stddev[j] > 0.0)) {
      s.stddev[j] = 1.0;
      s.degenerate[j] = true;
    }
  }
  return s;
}

std::vector<double> standardize_apply(const Standardizer& s,
                                      const std::vector<double>& x) {
  if (x.size() != s.mean.size())
    throw std::invalid_argument("standardize_apply: dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - s.mean[j]) / s.stddev[j];
  return out;
}

void save_node_features_csv(const std::string& path,
                            const std::vector<FeatureMatrix>& features) {
  std::size_t width = 0;
  for (const FeatureMatrix& f : features)
    if (!f.rows.empty()) width = f.rows.front().size();

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_node_features_csv: cannot open " + path);
  out << "graph_id,node_id";
  for (std::size_t j = 0; j < width; ++j) out << ",f_" << j;
  out << "\n";
  for (const FeatureMatrix& f : features) {
    for (std::size_t v = 0; v < f.rows.size(); ++v) {
      out << f.graph_id << "," << v;
      for (double x : f.rows[v]) out << "," << format_double(x);
      out << "\n";
    }
  }
  if (!out) throw std::runtime_error("save_node_features_csv: write failed for " + path);
}

void save_graph_features_csv(const std::string& path,
                             const std::vector<GraphFeatureRow>& rows) {
  const std::size_t width = rows.empty() ? 0 : rows.front().values.size();
  for (const GraphFeatureRow& r : rows)
    if (r.values.size() != width)
      throw std::invalid_argument("save_graph_features_csv: inconsistent dimensions");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_graph_features_csv: cannot open " + path);
  out << "graph_id,label";
  for (std::size_t j = 0; j < width; ++j) out << ",g_" << j;
  out << "\n";
  for (const GraphFeatureRow& r : rows) {
    out << r.graph_id << "," << r.label;
    for (double x : r.values) out << "," << format_double(x);
    out << "\n";
  }
  if (!out) throw std::runtime_error("save_graph_features_csv: write failed for " + path);
}

std::vector<GraphFeatureRow> load_graph_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_graph_features_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_graph_features_csv: " + path + " is empty");

  auto split = [](const std::string& text) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(text);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!text.empty() && text.back() == ',') fields.emplace_back();
    return fields;
  };

  const auto header = split(line);
  if (header.size() < 2 || header[0] != "graph_id" || header[1] != "label")
    throw std::runtime_error("load_graph_features_csv: " + path +
                             ": header must start with graph_id,label");
  const std::size_t width = header.size() - 2;

  std::vector<GraphFeatureRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw std::runtime_error("load_graph_features_csv: " + path + " line " +
                               std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    GraphFeatureRow row;
    try {
      row.graph_id = std::stoi(fields[0]);
      row.label = std::stoi(fields[1]);
      row.values.reserve(width);
      for (std::size_t j = 0; j < width; ++j) {
        std::size_t used = 0;
        row.values.push_back(std::stod(fields[j + 2], &used));
        if (used != fields[j + 2].size()) throw std::invalid_argument("trailing junk");
      }
    } catch (const std::exception&) {
      throw std::runtime_error("load_graph_features_csv: " + path + " line " +
                               std::to_string(line_no) + ": malformed number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace motifconv
