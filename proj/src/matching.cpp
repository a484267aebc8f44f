#include "motifconv/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "motifconv/parallel.hpp"

namespace motifconv {

namespace {

void normalize_rows(Mat& m) {
  for (int i = 0; i < m.rows; ++i) {
    double sum = 0.0;
    for (int j = 0; j < m.cols; ++j) sum += m(i, j);
    if (!(sum > 0.0) || !std::isfinite(sum))
      throw std::runtime_error("sinkhorn_normalize: row " + std::to_string(i) +
                               " sum is " + std::to_string(sum));
    for (int j = 0; j < m.cols; ++j) m(i, j) /= sum;
  }
}

void normalize_cols(Mat& m) {
  for (int j = 0; j < m.cols; ++j) {
    double sum = 0.0;
    for (int i = 0; i < m.rows; ++i) sum += m(i, j);
    if (!(sum > 0.0) || !std::isfinite(sum))
      throw std::runtime_error("sinkhorn_normalize: column " + std::to_string(j) +
                               " sum is " + std::to_string(sum));
    for (int i = 0; i < m.rows; ++i) m(i, j) /= sum;
  }
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.a.size(); ++k) d = std::max(d, std::abs(a.a[k] - b.a[k]));
  return d;
}

// Dense compatibility tables reused across the annealing loop.
struct CompatTables {
  Mat node_sim;                                        // n1 x n2
  Mat edge_sim;                                        // l1 x l2
  std::vector<std::vector<std::pair<int, int>>> adj1;  // (neighbor, edge index)
  std::vector<std::vector<std::pair<int, int>>> adj2;
};

CompatTables build_tables(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg) {
  CompatTables t;
  t.node_sim = Mat(g1.node_count(), g2.node_count());
  for (int u = 0; u < g1.node_count(); ++u)
    for (int i = 0; i < g2.node_count(); ++i)
      t.node_sim(u, i) = node_compat(g1.node_attrs[u], g2.node_attrs[i], cfg);
  t.edge_sim = Mat(g1.edge_count(), g2.edge_count());
  for (int e = 0; e < g1.edge_count(); ++e)
    for (int f = 0; f < g2.edge_count(); ++f)
      t.edge_sim(e, f) = edge_compat(g1.edges[e].attrs, g2.edges[f].attrs, cfg);
  t.adj1 = build_adjacency(g1);
  t.adj2 = build_adjacency(g2);
  return t;
}

// Key for undirected edge lookup in a graph with n nodes.
std::int64_t pair_key(int a, int b, int n) {
  return static_cast<std::int64_t>(std::min(a, b)) * n + std::max(a, b);
}

std::unordered_map<std::int64_t, int> edge_index_map(const ArgGraph& g) {
  std::unordered_map<std::int64_t, int> idx;
  idx.reserve(g.edges.size() * 2);
  for (int e = 0; e < g.edge_count(); ++e)
    idx.emplace(pair_key(g.edges[e].u, g.edges[e].v, g.node_count()), e);
  return idx;
}

double combine_terms(double edge_sum, double node_sum, int n1, int n2, int l1, int l2,
                     double alpha) {
  double s = 0.0;
  if (l1 > 0 && l2 > 0)
    s += edge_sum / (2.0 * std::sqrt(static_cast<double>(l1) * static_cast<double>(l2)));
  s += alpha * node_sum / std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
  return s / (1.0 + alpha);
}

void check_params(const MatchParams& p) {
  if (!(p.beta0 > 0.0) || !(p.beta_f > p.beta0) || !(p.beta_r > 0.0))
    throw std::invalid_argument("match params need beta0 > 0, beta_f > beta0, beta_r > 0");
  if (p.sinkhorn_max_iters < 1 || !(p.sinkhorn_tol > 0.0))
    throw std::invalid_argument("match params need sinkhorn_max_iters >= 1 and tol > 0");
}

}  // namespace

namespace {

// Sinkhorn alternation on a slack-augmented matrix: the last row and column
// absorb unmatched mass and are never themselves normalized.  Real rows are
// scaled to sum 1 across all n2+1 entries, real columns across all n1+1
// entries.  Unlike the plain alternation, this system is feasible for any
// shape, so out-competed nodes shed mass into the slack instead of forcing a
// uniform split of their rivals' columns.  Every division is logged into the
// dual vectors so the next annealing step can start from the scaling this
// one reached; the limit is unchanged (it is unique up to these diagonal
// scalings), only the passes needed to reach it shrink.
int sinkhorn_normalize_slack(Mat& m, double tol, int max_iters, std::vector<double>& log_row,
                             std::vector<double>& log_col) {
  const int n1 = m.rows - 1;  // real rows
  const int n2 = m.cols - 1;  // real cols
  int passes = 0;
  Mat prev;
  for (passes = 1; passes <= max_iters; ++passes) {
    prev = m;
    for (int u = 0; u < n1; ++u) {
      double sum = 0.0;
      for (int i = 0; i <= n2; ++i) sum += m(u, i);
      if (!(sum > 0.0) || !std::isfinite(sum))
        throw std::runtime_error("graduated_assignment: row " + std::to_string(u) +
                                 " sum is " + std::to_string(sum));
      for (int i = 0; i <= n2; ++i) m(u, i) /= sum;
      log_row[u] -= std::log(sum);
    }
    for (int i = 0; i < n2; ++i) {
      double sum = 0.0;
      for (int u = 0; u <= n1; ++u) sum += m(u, i);
      if (!(sum > 0.0) || !std::isfinite(sum))
        throw std::runtime_error("graduated_assignment: column " + std::to_string(i) +
                                 " sum is " + std::to_string(sum));
      for (int u = 0; u <= n1; ++u) m(u, i) /= sum;
      log_col[i] -= std::log(sum);
    }
    if (max_abs_diff(m, prev) < tol) break;
  }
  return std::min(passes, max_iters);
}

}  // namespace

Mat sinkhorn_normalize(Mat m, double tol, int max_iters, int* passes_out) {
  if (m.rows < 1 || m.cols < 1) throw std::invalid_argument("sinkhorn_normalize: empty matrix");

  // Degenerate shapes: a single pass along the only meaningful axis.
  if (m.rows == 1) {
    normalize_rows(m);
    if (passes_out) *passes_out = 1;
    return m;
  }
  if (m.cols == 1) {
    normalize_cols(m);
    if (passes_out) *passes_out = 1;
    return m;
  }

  int passes = 0;
  Mat prev;
  for (passes = 1; passes <= max_iters; ++passes) {
    prev = m;
    normalize_rows(m);
    normalize_cols(m);
    if (max_abs_diff(m, prev) < tol) break;
  }
  passes = std::min(passes, max_iters);
  if (m.rows < m.cols) normalize_rows(m);  // unit sums on the smaller dimension
  if (passes_out) *passes_out = passes;
  return m;
}

SoftAssignment graduated_assignment(const ArgGraph& g1, const ArgGraph& g2,
                                    const CompatConfig& cfg, const MatchParams& params,
                                    SinkhornTrace* trace) {
  g1.validate();
  g2.validate();
  check_params(params);

  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  const CompatTables t = build_tables(g1, g2, cfg);

  Mat m = t.node_sim;
  Mat q(n1, n2);
  Mat aug(n1 + 1, n2 + 1);
  // Q_ui = edge_scale * sum over adjacent (v,j) of edge_sim * M_vj
  //        + alpha * node_sim, the gradient of the assignment objective at
  // the current M.  edge_scale folds the final score's size normalization
  // (edge term / 2*sqrt(l1*l2) versus node term / sqrt(n1*n2)) into the
  // base 1/2 so the climb and the reported score rank matchings the same
  // way; the factor is exactly 1/2 when edge counts mirror node counts.
  const double edge_scale =
      (g1.edge_count() > 0 && g2.edge_count() > 0)
          ? 0.5 * std::sqrt(static_cast<double>(n1) * n2 /
                            (static_cast<double>(g1.edge_count()) * g2.edge_count()))
          : 0.0;
  // Scaling duals carried across temperatures: competitions resolved at a
  // lower beta stay resolved instead of being re-fought from scratch against
  // exponentially small entries at every step.
  std::vector<double> log_row(n1 + 1, 0.0), log_col(n2 + 1, 0.0);
  for (double beta = params.beta0; beta <= params.beta_f; beta *= 1.0 + params.beta_r) {
    std::fill(q.a.begin(), q.a.end(), 0.0);
    for (int u = 0; u < n1; ++u) {
      for (const auto& [v, e1] : t.adj1[u]) {
        for (int i = 0; i < n2; ++i) {
          double acc = 0.0;
          for (const auto& [j, e2] : t.adj2[i]) acc += t.edge_sim(e1, e2) * m(v, j);
          q(u, i) += edge_scale * acc;
        }
      }
    }
    for (int u = 0; u < n1; ++u)
      for (int i = 0; i < n2; ++i) q(u, i) += cfg.alpha * t.node_sim(u, i);

    // exp(beta * Q) with a global shift; the shift rescales every entry by
    // the same factor, which the normalization cancels out.  Slack cells get
    // the payoff of leaving a node unmatched (zero), shifted identically so
    // real matches keep their advantage over opting out.  The exponent clamp
    // keeps entries inside the finite exp() range.
    const double q_max = *std::max_element(q.a.begin(), q.a.end());
    const auto shifted_exp = [&](double value, double dual) {
      return std::exp(std::clamp(beta * (value - q_max) + dual, -700.0, 700.0));
    };
    for (int u = 0; u < n1; ++u)
      for (int i = 0; i < n2; ++i) aug(u, i) = shifted_exp(q(u, i), log_row[u] + log_col[i]);
    for (int u = 0; u <= n1; ++u) aug(u, n2) = shifted_exp(0.0, log_row[u]);
    for (int i = 0; i <= n2; ++i) aug(n1, i) = shifted_exp(0.0, log_col[i]);

    const int passes = sinkhorn_normalize_slack(aug, params.sinkhorn_tol,
                                                params.sinkhorn_max_iters, log_row, log_col);
    for (int u = 0; u < n1; ++u)
      for (int i = 0; i < n2; ++i) m(u, i) = aug(u, i);
    if (trace) {
      // residuals of the constraints the normalization drives to 1: full
      // slack-inclusive sums of every real row and real column
      double row_err = 0.0, col_err = 0.0;
      for (int u = 0; u < n1; ++u) {
        double sum = 0.0;
        for (int i = 0; i <= n2; ++i) sum += aug(u, i);
        row_err = std::max(row_err, std::abs(sum - 1.0));
      }
      for (int i = 0; i < n2; ++i) {
        double sum = 0.0;
        for (int u = 0; u <= n1; ++u) sum += aug(u, i);
        col_err = std::max(col_err, std::abs(sum - 1.0));
      }
      trace->row_sum_err.push_back(row_err);
      trace->col_sum_err.push_back(col_err);
      trace->passes.push_back(passes);
    }
  }
  return SoftAssignment{std::move(m)};
}

HardAssignment greedy_hard_assignment(const SoftAssignment& soft) {
  const Mat& m = soft.m;
  for (double x : m.a)
    if (!std::isfinite(x))
      throw std::invalid_argument("greedy_hard_assignment: non-finite entry");

  std::vector<bool> row_used(m.rows, false), col_used(m.cols, false);
  HardAssignment h;
  const int k = std::min(m.rows, m.cols);
  h.pairs.reserve(k);
  for (int step = 0; step < k; ++step) {
    double best = -std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < m.rows; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < m.cols; ++j) {
        if (col_used[j]) continue;
        if (m(i, j) > best) {
          best = m(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    row_used[bi] = true;
    col_used[bj] = true;
    h.pairs.emplace_back(bi, bj);
  }
  return h;
}

double similarity_score(const ArgGraph& g1, const ArgGraph& g2, const HardAssignment& h,
                        const CompatConfig& cfg) {
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  std::vector<int> map12(n1, -1);
  std::vector<bool> used2(n2, false);
  for (const auto& [u, i] : h.pairs) {
    if (u < 0 || u >= n1 || i < 0 || i >= n2)
      throw std::invalid_argument("similarity_score: pair (" + std::to_string(u) + "," +
                                  std::to_string(i) + ") out of range");
    if (map12[u] != -1 || used2[i])
      throw std::invalid_argument("similarity_score: matching is not injective");
    map12[u] = i;
    used2[i] = true;
  }

  double node_sum = 0.0;
  for (const auto& [u, i] : h.pairs)
    node_sum += node_compat(g1.node_attrs[u], g2.node_attrs[i], cfg);

  const auto g2_edges = edge_index_map(g2);
  double edge_sum = 0.0;
  for (const ArgEdge& e : g1.edges) {
    const int i = map12[e.u];
    const int j = map12[e.v];
    if (i < 0 || j < 0) continue;
    auto it = g2_edges.find(pair_key(i, j, n2));
    if (it == g2_edges.end()) continue;
    // each stored undirected edge stands for both ordered directions
    edge_sum += 2.0 * edge_compat(e.attrs, g2.edges[it->second].attrs, cfg);
  }

  return combine_terms(edge_sum, node_sum, n1, n2, g1.edge_count(), g2.edge_count(),
                       cfg.alpha);
}

namespace {

// Steepest-ascent cleanup of a hard assignment under the true normalized
// score.  Moves: swap the columns of two matched rows, retarget a matched
// row to an unmatched column, relocate a matched column to an unmatched
// row.  The annealing occasionally locks one or two pairs into a
// node-greedy choice; these single-pair repairs recover most of that gap.
class AssignmentRefiner {
 public:
  AssignmentRefiner(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg)
      : n1_(g1.node_count()),
        n2_(g2.node_count()),
        l1_(g1.edge_count()),
        l2_(g2.edge_count()),
        alpha_(cfg.alpha),
        tables_(build_tables(g1, g2, cfg)),
        g2_edges_(edge_index_map(g2)),
        edges1_(g1.edges),
        map12_(g1.node_count(), -1) {}

  double score(const std::vector<std::pair<int, int>>& pairs) {
    std::fill(map12_.begin(), map12_.end(), -1);
    double node_sum = 0.0;
    for (const auto& [u, i] : pairs) {
      map12_[u] = i;
      node_sum += tables_.node_sim(u, i);
    }
    double edge_sum = 0.0;
    for (int e = 0; e < l1_; ++e) {
      const int i = map12_[edges1_[e].u];
      const int j = map12_[edges1_[e].v];
      if (i < 0 || j < 0) continue;
      auto it = g2_edges_.find(pair_key(i, j, n2_));
      if (it == g2_edges_.end()) continue;
      edge_sum += 2.0 * tables_.edge_sim(e, it->second);
    }
    return combine_terms(edge_sum, node_sum, n1_, n2_, l1_, l2_, alpha_);
  }

  double refine(HardAssignment& h) {
    double best = score(h.pairs);
    const int k = static_cast<int>(h.pairs.size());
    std::vector<bool> row_used(n1_), col_used(n2_);
    // each accepted move strictly improves a score bounded by 1, and with
    // finitely many assignments ascent must stop; the guard is a backstop
    for (int guard = 0; guard < 64 * (n1_ + n2_); ++guard) {
      std::fill(row_used.begin(), row_used.end(), false);
      std::fill(col_used.begin(), col_used.end(), false);
      for (const auto& [u, c] : h.pairs) {
        row_used[u] = true;
        col_used[c] = true;
      }
      double best_score = best;
      HardAssignment best_move;
      auto consider = [&](HardAssignment&& cand) {
        const double s = score(cand.pairs);
        if (s > best_score + 1e-15) {
          best_score = s;
          best_move = std::move(cand);
        }
      };
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          HardAssignment cand = h;
          std::swap(cand.pairs[a].second, cand.pairs[b].second);
          consider(std::move(cand));
        }
      for (int a = 0; a < k; ++a)
        for (int c = 0; c < n2_; ++c) {
          if (col_used[c]) continue;
          HardAssignment cand = h;
          cand.pairs[a].second = c;
          consider(std::move(cand));
        }
      for (int a = 0; a < k; ++a)
        for (int w = 0; w < n1_; ++w) {
          if (row_used[w]) continue;
          HardAssignment cand = h;
          cand.pairs[a].first = w;
          consider(std::move(cand));
        }
      if (best_score <= best + 1e-15) break;
      h = std::move(best_move);
      best = best_score;
    }
    return best;
  }

 private:
  int n1_, n2_, l1_, l2_;
  double alpha_;
  CompatTables tables_;
  std::unordered_map<std::int64_t, int> g2_edges_;
  std::vector<ArgEdge> edges1_;
  std::vector<int> map12_;
};

}  // namespace

MatchResult match_and_score(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg,
                            const MatchParams& params) {
  SoftAssignment soft = graduated_assignment(g1, g2, cfg, params);
  HardAssignment hard = greedy_hard_assignment(soft);
  AssignmentRefiner refiner(g1, g2, cfg);
  const double score = refiner.refine(hard);
  return MatchResult{std::move(hard), score};
}

namespace {

struct BruteForceState {
  const CompatTables* tables;                 // oriented small -> large
  const std::unordered_map<std::int64_t, int>* large_edges;
  int n_small = 0, n_large = 0, l_small = 0, l_large = 0, large_n = 0;
  double alpha = 0.0;
  std::vector<int> assign;
  std::vector<bool> used;
  double best_score = -1.0;
  std::vector<int> best_assign;

  void search(int p, double node_sum, double edge_sum) {
    if (p == n_small) {
      const double s =
          combine_terms(edge_sum, node_sum, n_small, n_large, l_small, l_large, alpha);
      if (s > best_score) {
        best_score = s;
        best_assign = assign;
      }
      return;
    }
    for (int q = 0; q < n_large; ++q) {
      if (used[q]) continue;
      const double dn = tables->node_sim(p, q);
      double de = 0.0;
      for (const auto& [w, e1] : tables->adj1[p]) {
        if (w >= p) continue;  // only endpoints already placed
        auto it = large_edges->find(pair_key(assign[w], q, large_n));
        if (it != large_edges->end()) de += 2.0 * tables->edge_sim(e1, it->second);
      }
      assign[p] = q;
      used[q] = true;
      search(p + 1, node_sum + dn, edge_sum + de);
      assign[p] = -1;
      used[q] = false;
    }
  }
};

}  // namespace

MatchResult brute_force_match(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg) {
  g1.validate();
  g2.validate();
  const int n_min = std::min(g1.node_count(), g2.node_count());
  if (n_min > 9)
    throw std::invalid_argument("brute_force_match: min(n1,n2) = " + std::to_string(n_min) +
                                " exceeds the enumeration guard of 9");

  const bool swapped = g1.node_count() > g2.node_count();
  const ArgGraph& small = swapped ? g2 : g1;
  const ArgGraph& large = swapped ? g1 : g2;

  const CompatTables tables = build_tables(small, large, cfg);
  const auto large_edges = edge_index_map(large);

  BruteForceState st;
  st.tables = &tables;
  st.large_edges = &large_edges;
  st.n_small = small.node_count();
  st.n_large = large.node_count();
  st.l_small = small.edge_count();
  st.l_large = large.edge_count();
  st.large_n = large.node_count();
  st.alpha = cfg.alpha;
  st.assign.assign(st.n_small, -1);
  st.used.assign(st.n_large, false);
  st.search(0, 0.0, 0.0);

  MatchResult result;
  result.score = st.best_score;
  result.assignment.pairs.reserve(st.n_small);
  for (int p = 0; p < st.n_small; ++p) {
    if (swapped)
      result.assignment.pairs.emplace_back(st.best_assign[p], p);
    else
      result.assignment.pairs.emplace_back(p, st.best_assign[p]);
  }
  if (swapped) {
    std::sort(result.assignment.pairs.begin(), result.assignment.pairs.end());
  }
  return result;
}

Mat pairwise_similarity(const std::vector<ArgGraph>& graphs, const CompatConfig& cfg,
                        const MatchParams& params, int workers) {
  if (workers < 1) throw std::invalid_argument("pairwise_similarity: workers must be >= 1");
  const int n = static_cast<int>(graphs.size());
  Mat sim(n, n, 0.0);
  for (int i = 0; i < n; ++i) sim(i, i) = 1.0;  // self-match by convention

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double s = match_and_score(graphs[i], graphs[j], cfg, params).score;
    sim(i, j) = s;
    sim(j, i) = s;
  });
  return sim;
}

}  // namespace motifconv
