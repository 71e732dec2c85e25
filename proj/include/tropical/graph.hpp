#pragma once

// Digraph view of a max-plus matrix: support, strong connectivity, maximum
// cycle mean, and the optimal path weights relative to the pivot node.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "tropical/errors.hpp"
#include "tropical/matrix.hpp"

namespace tropical {

/// Arcs (i,j) with a finite entry; node indices are 0-based.
struct EdgeSet {
  Index nodes = 0;
  std::set<std::pair<Index, Index>> edges;

  bool contains(Index i, Index j) const { return edges.count({i, j}) > 0; }
  bool operator==(const EdgeSet&) const = default;
};

template <class R>
struct CycleMean {
  MaxPlus<R> mean;            // epsilon when the digraph is acyclic
  std::vector<Index> witness; // one attaining cycle, starting at its smallest node
};

template <class D>
EdgeSet support(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw DimensionError("support: matrix is not square");
  EdgeSet s{a.rows(), {}};
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a.coeff(i, j).is_finite()) s.edges.emplace(i, j);
  return s;
}

template <class DA, class DB>
bool geometrically_equivalent(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("geometrically_equivalent: size mismatch");
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a.coeff(i, j).is_finite() != b.coeff(i, j).is_finite()) return false;
  return true;
}

namespace detail {

// Nodes reachable from `start` using arcs accepted by `arc`, restricted to `allowed`.
template <class Arc>
std::vector<bool> reachable(Index n, Index start, const std::vector<bool>& allowed, Arc arc) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Index> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    for (Index v = 0; v < n; ++v) {
      if (seen[static_cast<std::size_t>(v)] || !allowed[static_cast<std::size_t>(v)] || !arc(u, v)) continue;
      seen[static_cast<std::size_t>(v)] = true;
      stack.push_back(v);
    }
  }
  return seen;
}

// Lexicographically smallest simple cycle over arcs accepted by `arc`,
// rotated to start at its smallest node. Empty if there is none.
template <class Arc>
std::vector<Index> smallest_cycle(Index n, Arc arc) {
  for (Index s = 0; s < n; ++s) {
    if (arc(s, s)) return {s};
    std::vector<bool> allowed(static_cast<std::size_t>(n), false);
    for (Index v = s; v < n; ++v) allowed[static_cast<std::size_t>(v)] = true;
    // backwards reachability to s inside nodes >= s
    auto back = reachable(n, s, allowed, [&](Index u, Index v) { return arc(v, u); });
    bool on_cycle = false;
    for (Index v = s + 1; v < n && !on_cycle; ++v) on_cycle = arc(s, v) && back[static_cast<std::size_t>(v)];
    if (!on_cycle) continue;

    std::vector<Index> cycle{s};
    std::vector<bool> free_nodes = allowed;
    free_nodes[static_cast<std::size_t>(s)] = false;
    Index cur = s;
    while (true) {
      if (cur != s && arc(cur, s)) return cycle;
      Index next = -1;
      for (Index v = s + 1; v < n && next < 0; ++v) {
        if (!free_nodes[static_cast<std::size_t>(v)] || !arc(cur, v)) continue;
        // v must still be able to close the cycle through unused nodes
        std::vector<bool> mask = free_nodes;
        mask[static_cast<std::size_t>(s)] = true;
        auto seen = reachable(n, v, mask, arc);
        if (seen[static_cast<std::size_t>(s)]) next = v;
      }
      if (next < 0) break;  // unreachable given the reachability checks
      cycle.push_back(next);
      free_nodes[static_cast<std::size_t>(next)] = false;
      cur = next;
    }
  }
  return {};
}

}  // namespace detail

/// Strongly connected support digraph.
template <class D>
bool is_irreducible(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw DimensionError("is_irreducible: matrix is not square");
  const Index n = a.rows();
  if (n == 0) return false;
  std::vector<bool> all(static_cast<std::size_t>(n), true);
  auto fwd = detail::reachable(n, 0, all, [&](Index u, Index v) { return a.coeff(u, v).is_finite(); });
  auto bwd = detail::reachable(n, 0, all, [&](Index u, Index v) { return a.coeff(v, u).is_finite(); });
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

/**
 * Maximum cycle mean by Karp's recurrence, with D_0(v) = 0 for every v
 * standing in for a super-source. The witness is recovered from the arcs
 * that are tight for the potentials of A - lambda, every cycle of which has
 * mean exactly lambda.
 */
template <class D>
CycleMean<detail::value_t<D>> max_cycle_mean(const Eigen::MatrixBase<D>& a) {
  using R = detail::value_t<D>;
  using S = MaxPlus<R>;
  if (a.rows() != a.cols()) throw DimensionError("max_cycle_mean: matrix is not square");
  const Index n = a.rows();
  if (n == 0) return {};

  // walks[k][v]: heaviest walk of length exactly k ending at v
  std::vector<std::vector<S>> walks(static_cast<std::size_t>(n + 1), std::vector<S>(static_cast<std::size_t>(n)));
  for (auto& x : walks[0]) x = S::unit();
  for (Index k = 1; k <= n; ++k)
    for (Index u = 0; u < n; ++u) {
      const S& du = walks[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(u)];
      if (du.is_epsilon()) continue;
      for (Index v = 0; v < n; ++v) {
        S cand = otimes(du, a.coeff(u, v));
        S& dv = walks[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
        if (dv < cand) dv = std::move(cand);
      }
    }

  S best;
  for (Index v = 0; v < n; ++v) {
    const S& dn = walks[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)];
    if (dn.is_epsilon()) continue;
    S worst;
    bool have = false;
    for (Index k = 0; k < n; ++k) {
      const S& dk = walks[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
      if (dk.is_epsilon()) continue;
      R mean = (dn.value() - dk.value()) / R(static_cast<long>(n - k));
      if (!have || mean < worst.value()) worst = S(std::move(mean));
      have = true;
    }
    if (have && best < worst) best = worst;
  }
  if (best.is_epsilon()) return {};

  const R& lambda = best.value();
  // potentials of A - lambda; finite since no cycle is positive after the shift
  std::vector<R> pot(static_cast<std::size_t>(n), R(0));
  for (Index round = 0; round < n; ++round)
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v) {
        if (a.coeff(u, v).is_epsilon()) continue;
        R cand = pot[static_cast<std::size_t>(u)] + a.coeff(u, v).value() - lambda;
        if (pot[static_cast<std::size_t>(v)] < cand) pot[static_cast<std::size_t>(v)] = cand;
      }
  auto tight = [&](Index u, Index v) {
    return a.coeff(u, v).is_finite() &&
           pot[static_cast<std::size_t>(u)] + a.coeff(u, v).value() - lambda == pot[static_cast<std::size_t>(v)];
  };
  return {best, detail::smallest_cycle(n, tight)};
}

/// Maximum cycle mean of the submatrix without the pivot row and column; witness in full indices.
template <class D>
CycleMean<detail::value_t<D>> lambda_star(const Eigen::MatrixBase<D>& a_sup) {
  using R = detail::value_t<D>;
  if (a_sup.rows() != a_sup.cols()) throw DimensionError("lambda_star: matrix is not square");
  const Index n = a_sup.rows();
  if (n <= 1) return {};
  Matrix<R> sub = a_sup.bottomRightCorner(n - 1, n - 1);
  CycleMean<R> r = max_cycle_mean(sub);
  for (auto& v : r.witness) ++v;
  return r;
}

namespace detail {

template <class D>
void require_negative_cycles(const Eigen::MatrixBase<D>& a, const char* who) {
  auto ls = lambda_star(a);
  if (ls.mean.is_finite() && !(ls.mean.value() < 0)) {
    throw AssumptionError(std::string(who) + ": a cycle avoiding node 1 has non-negative mean " +
                          ls.mean.value().get_str());
  }
}

template <class D>
Vector<value_t<D>> best_paths_pivot(const Eigen::MatrixBase<D>& a, bool to_pivot) {
  using R = value_t<D>;
  using S = MaxPlus<R>;
  const Index n = a.rows();
  Vector<R> d = Vector<R>::Constant(n, S());
  if (n == 0) return d;
  d(kPivot) = S::unit();
  for (Index round = 1; round < n; ++round) {
    Vector<R> next = d;
    for (Index i = 0; i < n; ++i) {
      if (i == kPivot) continue;
      for (Index u = 0; u < n; ++u) {
        S cand = to_pivot ? otimes(a.coeff(i, u), d(u)) : otimes(d(u), a.coeff(u, i));
        if (next(i) < cand) next(i) = std::move(cand);
      }
    }
    d = std::move(next);
  }
  return d;
}

}  // namespace detail

/**
 * Heaviest path weight from each node to the pivot (entry 0 is the empty
 * path, weight 0). Runs n-1 relaxation rounds, which is exact only when all
 * cycles avoiding the pivot are negative; that is checked and reported as
 * AssumptionError.
 */
template <class D>
Vector<detail::value_t<D>> best_paths_to_pivot(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw DimensionError("best_paths_to_pivot: matrix is not square");
  detail::require_negative_cycles(a, "best_paths_to_pivot");
  return detail::best_paths_pivot(a, true);
}

/// Mirror of best_paths_to_pivot: heaviest path from the pivot to each node.
template <class D>
Vector<detail::value_t<D>> best_paths_from_pivot(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw DimensionError("best_paths_from_pivot: matrix is not square");
  detail::require_negative_cycles(a, "best_paths_from_pivot");
  return detail::best_paths_pivot(a, false);
}

/**
 * Heaviest walk of length >= 1 between non-pivot nodes that never touches
 * the pivot: B (+) B^2 (+) ... (+) B^(n-1) on the pivot-deleted submatrix B.
 * The diagonal holds cycle weights. Row and column 0 are epsilon.
 */
template <class D>
Matrix<detail::value_t<D>> pivot_avoiding_walks(const Eigen::MatrixBase<D>& a) {
  using R = detail::value_t<D>;
  if (a.rows() != a.cols()) throw DimensionError("pivot_avoiding_walks: matrix is not square");
  detail::require_negative_cycles(a, "pivot_avoiding_walks");
  const Index n = a.rows();
  Matrix<R> out = epsilon_matrix<R>(n, n);
  if (n <= 1) return out;
  Matrix<R> b = a.bottomRightCorner(n - 1, n - 1);
  Matrix<R> acc = b;
  Matrix<R> walk = b;
  for (Index len = 2; len <= n - 1; ++len) {
    walk = product(walk, b);
    acc = oplus(acc, walk);
  }
  out.bottomRightCorner(n - 1, n - 1) = acc;
  return out;
}

}  // namespace tropical
