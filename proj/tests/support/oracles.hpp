#pragma once

// Brute-force reference computations. They read matrix entries only and share
// no code with the library's algorithms.

#include <functional>
#include <optional>
#include <vector>

#include "tropical/matrix.hpp"

namespace oracle {

using tropical::Index;
using tropical::MatrixXq;
using tropical::Rational;
using tropical::Scalar;
using tropical::VectorXq;

using Opt = std::optional<Rational>;

inline void keep_max(Opt& best, const Rational& x) {
  if (!best || x > *best) best = x;
}
inline Scalar lift(const Opt& x) { return x ? Scalar(*x) : Scalar(); }

// Calls visit(weight, length) for every simple path from `from` to `to`
// (length >= 1) whose interior avoids `banned` and repeats no node. With
// from == to, this enumerates the simple cycles through `from`.
inline void simple_paths(const MatrixXq& a, Index from, Index to, std::optional<Index> banned,
                         const std::function<void(const Rational&, std::size_t)>& visit) {
  const Index n = a.rows();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(Index, Rational, std::size_t)> go = [&](Index at, Rational weight, std::size_t len) {
    for (Index nx = 0; nx < n; ++nx) {
      if (!a(at, nx).is_finite()) continue;
      Rational next = weight + a(at, nx).value();
      if (nx == to) {
        visit(next, len + 1);
        continue;
      }
      if (used[static_cast<std::size_t>(nx)] || (banned && nx == *banned)) continue;
      used[static_cast<std::size_t>(nx)] = true;
      go(nx, next, len + 1);
      used[static_cast<std::size_t>(nx)] = false;
    }
  };
  used[static_cast<std::size_t>(from)] = true;
  go(from, Rational(0), 0);
}

inline Opt max_cycle_mean(const MatrixXq& a) {
  Opt best;
  for (Index s = 0; s < a.rows(); ++s) {
    // cycles whose smallest node is s
    MatrixXq sub = a;
    for (Index x = 0; x < s; ++x) {
      sub.row(x).setConstant(Scalar());
      sub.col(x).setConstant(Scalar());
    }
    simple_paths(sub, s, s, std::nullopt, [&](const Rational& w, std::size_t len) {
      keep_max(best, Rational(w / Rational(static_cast<unsigned long>(len))));
    });
  }
  return best;
}

inline MatrixXq drop_pivot(const MatrixXq& a) { return a.bottomRightCorner(a.rows() - 1, a.cols() - 1); }

inline VectorXq paths_to_pivot(const MatrixXq& a) {
  VectorXq out(a.rows());
  out(0) = Scalar(0);
  for (Index i = 1; i < a.rows(); ++i) {
    Opt best;
    simple_paths(a, i, 0, std::nullopt, [&](const Rational& w, std::size_t) { keep_max(best, w); });
    out(i) = lift(best);
  }
  return out;
}

inline VectorXq paths_from_pivot(const MatrixXq& a) {
  VectorXq out(a.rows());
  out(0) = Scalar(0);
  for (Index j = 1; j < a.rows(); ++j) {
    Opt best;
    simple_paths(a, 0, j, std::nullopt, [&](const Rational& w, std::size_t) { keep_max(best, w); });
    out(j) = lift(best);
  }
  return out;
}

// Heaviest walk of length >= 1 avoiding node 0; with every cycle negative a
// simple path (or simple cycle when i == j) attains it.
inline MatrixXq pivot_avoiding(const MatrixXq& a) {
  const Index n = a.rows();
  MatrixXq out = tropical::epsilon_matrix<Rational>(n, n);
  for (Index i = 1; i < n; ++i) {
    for (Index j = 1; j < n; ++j) {
      Opt best;
      simple_paths(a, i, j, Index{0}, [&](const Rational& w, std::size_t) { keep_max(best, w); });
      out(i, j) = lift(best);
    }
  }
  return out;
}

inline MatrixXq naive_product(const MatrixXq& a, const MatrixXq& b) {
  MatrixXq c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      Opt best;
      for (Index l = 0; l < a.cols(); ++l) {
        if (a(i, l).is_finite() && b(l, j).is_finite()) keep_max(best, a(i, l).value() + b(l, j).value());
      }
      c(i, j) = lift(best);
    }
  }
  return c;
}

inline MatrixXq naive_fold(const std::vector<MatrixXq>& members, const std::vector<std::size_t>& seq) {
  MatrixXq acc = members.at(seq.at(0) - 1);
  for (std::size_t p = 1; p < seq.size(); ++p) acc = naive_product(acc, members.at(seq[p] - 1));
  return acc;
}

// Pivot-based rank-one test written out entry by entry.
inline bool naive_rank_one(const MatrixXq& m) {
  if (!m(0, 0).is_finite()) return false;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const bool rhs_finite = m(i, 0).is_finite() && m(0, j).is_finite();
      if (rhs_finite != m(i, j).is_finite()) return false;
      if (rhs_finite && m(i, j).value() != m(i, 0).value() + m(0, j).value() - m(0, 0).value()) return false;
    }
  }
  return true;
}

}  // namespace oracle
