#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "motifconv/arg_graph.hpp"
#include "motifconv/compat.hpp"

namespace motifconv {

// Minimal dense row-major matrix; assignment matrices here are tiny.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

struct MatchParams {
  double beta0 = 1.0;
  double beta_f = 30.0;
  double beta_r = 0.075;
  // Inner normalization budget per temperature.  Near-tied competitions at
  // high beta resolve at a handful of significant digits per hundred
  // passes, so the ceiling is generous; typical steps stop after a few.
  // The entry-change tolerance leaves row/column sums within a few 1e-4 of
  // 1 at convergence (the residual scales roughly linearly with the
  // tolerance and stays under the 1e-3 balancing contract with margin).
  int sinkhorn_max_iters = 2000;
  double sinkhorn_tol = 5e-7;
};

// Soft node-to-node matching: nonnegative n1 x n2 matrix. Once the
// normalization settles, every row and column sum stays within the
// balancing residual of 1 (a few 1e-4 at the default sinkhorn_tol; the
// per-step residuals are recorded in SinkhornTrace). Mass a node cannot
// justify against any partner sits in the matcher's internal slack cells
// and is simply absent here.
struct SoftAssignment {
  Mat m;
};

// Hard matching: injective pair list (u in G1, i in G2), at most
// min(n1, n2) pairs, equivalent to a binary matrix with row/column sums <= 1.
struct HardAssignment {
  std::vector<std::pair<int, int>> pairs;
};

struct MatchResult {
  HardAssignment assignment;
  double score = 0.0;
};

// Per-annealing-step diagnostics: residuals of the sums the normalization
// drives to 1 (each real row and real column of the slack-augmented matrix,
// slack cell included) measured after the inner loop settled, plus the
// number of passes it used.
struct SinkhornTrace {
  std::vector<double> row_sum_err;
  std::vector<double> col_sum_err;
  std::vector<int> passes;
};

// Alternating row/column normalization toward a doubly stochastic matrix.
// One pass is a row pass followed by a column pass; the loop stops when no
// entry moves by more than tol between passes, or after max_iters passes.
// Wide matrices (rows < cols) get one extra row pass at the end so the
// unit sums land on the smaller dimension. Degenerate single-row or
// single-column inputs take exactly one pass along that axis.
// Throws on a zero row/column sum (upstream over/underflow).
Mat sinkhorn_normalize(Mat m, double tol, int max_iters, int* passes_out = nullptr);

// Graduated assignment: starts from the node-compatibility matrix and
// anneals beta from beta0 to beta_f (growth rate beta_r), each step
// linearizing the quadratic assignment objective at the current soft
// matching, exponentiating, and renormalizing. The normalization runs on a
// slack-augmented matrix (one extra absorbing row and column holding the
// zero payoff of leaving a node unmatched): without slack, forcing every
// row of a rectangular matrix to sum 1 makes surplus nodes split their
// rivals' columns uniformly, erasing the objective's ranking information.
SoftAssignment graduated_assignment(const ArgGraph& g1, const ArgGraph& g2,
                                    const CompatConfig& cfg, const MatchParams& params,
                                    SinkhornTrace* trace = nullptr);

// Picks the largest remaining entry, fixes that pair, removes its row and
// column, and repeats until rows or columns are exhausted. Ties go to the
// lowest row index, then lowest column index.
HardAssignment greedy_hard_assignment(const SoftAssignment& soft);

// Normalized similarity of two graphs under a hard matching:
//   ( edge_term / (2*sqrt(l1*l2)) + alpha * node_term / sqrt(n1*n2) ) / (1+alpha)
// where node_term sums node compatibilities over matched pairs and edge_term
// sums edge compatibilities over ordered matched edge pairs (each stored
// undirected edge counts in both directions). If either graph has no edges
// the edge term is 0. Always in [0,1]; reaches 1 iff the matching certifies
// isomorphism under the configured kernels.
double similarity_score(const ArgGraph& g1, const ArgGraph& g2, const HardAssignment& h,
                        const CompatConfig& cfg);

// Full matcher: graduated assignment, greedy extraction, then a
// steepest-ascent cleanup (pair swaps, retargeting to unmatched columns,
// relocating to unmatched rows) that repairs single-pair mistakes the
// annealing occasionally locks in. Deterministic for fixed inputs.
MatchResult match_and_score(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg,
                            const MatchParams& params);

// Exhaustive maximizer of similarity_score over all injective matchings of
// the smaller graph into the larger. Guarded to min(n1,n2) <= 9.
MatchResult brute_force_match(const ArgGraph& g1, const ArgGraph& g2, const CompatConfig& cfg);

// Symmetric similarity matrix over all unordered pairs, diagonal fixed at 1.
// Pairs are split across workers; every pair is computed independently, so
// the result is identical for any worker count.
Mat pairwise_similarity(const std::vector<ArgGraph>& graphs, const CompatConfig& cfg,
                        const MatchParams& params, int workers);

}  // namespace motifconv
