#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tropical/family.hpp"
#include "tropical/matrix.hpp"
#include "tropical/product_lab.hpp"

namespace tropical {

/**
 * Layered digraph of a product A_1 (x) ... (x) A_k: k+1 copies of the node
 * set, and an arc i:(l-1) -> j:l weighted (A_l)_ij whenever that entry is
 * finite. Layers hold references into the family, which must outlive the
 * trellis.
 */
class TrellisDigraph {
 public:
  TrellisDigraph(const MatrixFamily& family, const ProductSequence& seq);

  Index nodes() const { return nodes_; }
  std::size_t length() const { return layers_.size(); }

  /// Weight matrix of the arcs entering layer l, 1 <= l <= length().
  const MatrixXq& layer(std::size_t l) const { return layers_.at(l - 1).get(); }

 private:
  Index nodes_;
  std::vector<std::reference_wrapper<const MatrixXq>> layers_;
};

struct NodeAt {
  Index node = 0;
  std::size_t layer = 0;
  bool operator==(const NodeAt&) const = default;
};

struct WalkSummary {
  Scalar weight;  // epsilon when no walk of the class exists
  std::size_t length = 0;
  // shortest length among maximum-weight walks; the witness has this length
  std::size_t min_length_among_optima = 0;
  std::vector<NodeAt> witness;
};

enum class WalkClass { Full, Initial, Final };

/// Sum of arc weights along a witness; epsilon if some arc is missing.
Scalar rescore(const TrellisDigraph& t, const std::vector<NodeAt>& walk);

/// Heaviest walk i:0 -> j:k. Its weight is the (i,j) entry of the product.
WalkSummary optimal_full_walk(const TrellisDigraph& t, Index i, Index j);

/// Heaviest walk i:0 -> 1:m (0 <= m <= k) that reaches node 1 only at its last step.
WalkSummary optimal_initial_walk(const TrellisDigraph& t, Index i);

/// Heaviest walk 1:l -> j:k that is at node 1 only at its first step.
WalkSummary optimal_final_walk(const TrellisDigraph& t, Index j);

/// w* for every start node in one backward sweep.
VectorXq initial_walk_weights(const TrellisDigraph& t);

/// v* for every end node in one forward sweep.
VectorXq final_walk_weights(const TrellisDigraph& t);

/// Heaviest full walk i:0 -> j:k visiting node 1 at some layer.
Scalar best_walk_through_pivot(const TrellisDigraph& t, Index i, Index j);

/// Heaviest full walk i:0 -> j:k never visiting node 1.
Scalar best_pivot_avoiding_walk(const TrellisDigraph& t, Index i, Index j);

/**
 * Brute-force maximum over every walk of the class, for checking the
 * dynamic programs. Initial: i:0 -> j:m with j only at the end. Final:
 * i:l -> j:k with i only at the start. Throws BudgetExceeded unless
 * n <= 6 and k <= 12.
 */
WalkSummary enumerate_walks(const TrellisDigraph& t, Index i, Index j, WalkClass cls);

struct LemmaInputs {
  VectorXq alpha;
  VectorXq beta;
  MatrixXq gamma;
  Scalar lambda;
  VectorXq w_star;
  VectorXq v_star;
};

struct LemmaCheck {
  enum class Status { Pass, Fail, Skipped };
  Status status = Status::Skipped;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/**
 * Empirical check of the four walk lemmas on one trellis:
 *  - initial_length / final_length: the shortest optimal initial (final)
 *    walk is no longer than (w*_i - alpha_i)/lambda + n - 1 (mirror for v*);
 *  - through_pivot: past its threshold, the best full walk via node 1
 *    weighs exactly w*_i + v*_j;
 *  - avoiding_pivot: past its threshold, every walk avoiding node 1 weighs
 *    strictly less than w*_i + v*_j.
 * Pairs whose threshold is not exceeded by k are skipped.
 */
struct LemmaReport {
  LemmaCheck initial_length;
  LemmaCheck final_length;
  LemmaCheck through_pivot;
  LemmaCheck avoiding_pivot;

  bool all_passed() const;
};

LemmaReport check_lemma_bounds(const TrellisDigraph& t, const LemmaInputs& in);

/// alpha, beta, gamma, lambda* from the family and w*, v* from the trellis.
LemmaInputs lemma_inputs(const MatrixFamily& family, const TrellisDigraph& t);

}  // namespace tropical
