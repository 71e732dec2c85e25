#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "tropical/errors.hpp"
#include "tropical/maxplus.hpp"

namespace Eigen {

template <class R>
struct NumTraits<tropical::MaxPlus<R>> : GenericNumTraits<tropical::MaxPlus<R>> {
  using Real = tropical::MaxPlus<R>;
  using NonInteger = tropical::MaxPlus<R>;
  using Literal = tropical::MaxPlus<R>;
  using Nested = tropical::MaxPlus<R>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};

}  // namespace Eigen

namespace tropical {

using Index = Eigen::Index;

template <class R>
using Matrix = Eigen::Matrix<MaxPlus<R>, Eigen::Dynamic, Eigen::Dynamic>;
template <class R>
using Vector = Eigen::Matrix<MaxPlus<R>, Eigen::Dynamic, 1>;

using MatrixXq = Matrix<Rational>;
using VectorXq = Vector<Rational>;

// Node 0 is the distinguished node carrying the weight-0 loop.
inline constexpr Index kPivot = 0;

namespace detail {
template <class Derived>
using value_t = typename Derived::Scalar::value_type;
}

template <class R>
Matrix<R> epsilon_matrix(Index rows, Index cols) {
  return Matrix<R>::Constant(rows, cols, MaxPlus<R>());
}

template <class R>
Matrix<R> identity(Index n) {
  Matrix<R> id = epsilon_matrix<R>(n, n);
  for (Index i = 0; i < n; ++i) id(i, i) = MaxPlus<R>::unit();
  return id;
}

template <class R = Rational>
Matrix<R> from_rows(std::initializer_list<std::initializer_list<std::type_identity_t<MaxPlus<R>>>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix<R> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw DimensionError("ragged matrix literal");
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

template <class R = Rational>
Vector<R> from_values(std::initializer_list<std::type_identity_t<MaxPlus<R>>> values) {
  Vector<R> v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

/// (A (x) B)_ij = max_k a_ik + b_kj
template <class DA, class DB>
Matrix<detail::value_t<DA>> product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using R = detail::value_t<DA>;
  if (a.cols() != b.rows()) {
    throw DimensionError("product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<R> c(a.rows(), b.cols());
  R best;
  R s;
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      bool found = false;
      for (Index k = 0; k < a.cols(); ++k) {
        const MaxPlus<R>& aik = a.coeff(i, k);
        const MaxPlus<R>& bkj = b.coeff(k, j);
        if (aik.is_epsilon() || bkj.is_epsilon()) continue;
        s = aik.value() + bkj.value();
        if (!found || best < s) {
          std::swap(best, s);
          found = true;
        }
      }
      if (found) c(i, j) = MaxPlus<R>(best);
    }
  }
  return c;
}

/// Entrywise max.
template <class DA, class DB>
Matrix<detail::value_t<DA>> oplus(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using R = detail::value_t<DA>;
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("oplus: shape mismatch");
  Matrix<R> c(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) c(i, j) = oplus(a.coeff(i, j), b.coeff(i, j));
  return c;
}

/// k-fold product; k = 0 gives the identity.
template <class D>
Matrix<detail::value_t<D>> power(const Eigen::MatrixBase<D>& a, std::size_t k) {
  using R = detail::value_t<D>;
  if (a.rows() != a.cols()) throw DimensionError("power: matrix is not square");
  Matrix<R> result = identity<R>(a.rows());
  Matrix<R> base = a;
  while (k > 0) {
    if (k & 1U) result = product(result, base);
    k >>= 1U;
    if (k > 0) base = product(base, base);
  }
  return result;
}

/// x (x) y^T for column vectors x, y.
template <class DX, class DY>
Matrix<detail::value_t<DX>> outer(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  using R = detail::value_t<DX>;
  if (x.cols() != 1 || y.cols() != 1) throw DimensionError("outer: arguments must be column vectors");
  Matrix<R> m(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < y.rows(); ++j) m(i, j) = otimes(x.coeff(i), y.coeff(j));
  return m;
}

/// Entrywise a <= b.
template <class DA, class DB>
bool leq(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("leq: shape mismatch");
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (b.coeff(i, j) < a.coeff(i, j)) return false;
  return true;
}

template <class DA, class DB>
bool equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a.coeff(i, j) == b.coeff(i, j))) return false;
  return true;
}

template <class R>
struct RankOneFactors {
  Vector<R> column;  // M(:, 0)
  Vector<R> row;     // M(0, :) - M(0, 0), as a column vector
};

/**
 * Pivot-based rank-one test on entry (0,0). Returns the factors iff
 * M_ij = M_i0 + M_0j - M_00 for every (i,j), epsilon included (an entry is
 * epsilon exactly when the right-hand side is). Throws PivotError when
 * M_00 is epsilon.
 */
template <class D>
std::optional<RankOneFactors<detail::value_t<D>>> rank_one_factor(const Eigen::MatrixBase<D>& m) {
  using R = detail::value_t<D>;
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("rank_one_factor: need a non-empty square matrix");
  if (m.coeff(0, 0).is_epsilon()) throw PivotError("rank_one_factor: entry (1,1) is epsilon");
  const R& pivot = m.coeff(0, 0).value();

  RankOneFactors<R> f{m.col(0), Vector<R>(m.cols())};
  for (Index j = 0; j < m.cols(); ++j) {
    const auto& e = m.coeff(0, j);
    f.row(j) = e.is_epsilon() ? MaxPlus<R>() : MaxPlus<R>(R(e.value() - pivot));
  }
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!(m.coeff(i, j) == otimes(f.column(i), f.row(j)))) return std::nullopt;
  return f;
}

}  // namespace tropical
