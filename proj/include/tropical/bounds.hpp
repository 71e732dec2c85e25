#pragma once

#include <cstddef>
#include <optional>

#include "tropical/family.hpp"
#include "tropical/matrix.hpp"

namespace tropical {

enum class BoundMode { Explicit, Implicit };

/// term1 bounds walks that avoid node 1; term2 bounds the initial + final walk lengths.
enum class BoundTerm { AvoidPivot, ThroughPivot };

/// Everything the two per-entry bound expressions consume.
struct BoundInputs {
  VectorXq to_pivot;    // w (explicit) or w* (implicit)
  VectorXq from_pivot;  // v (explicit) or v* (implicit)
  VectorXq alpha;
  VectorXq beta;
  MatrixXq gamma;
  Scalar lambda;  // epsilon when no cycle avoids node 1
};

struct BoundArgmax {
  Index row = 0;
  Index col = 0;
  BoundTerm term = BoundTerm::AvoidPivot;
};

struct BoundReport {
  BoundMode mode = BoundMode::Explicit;
  MatrixXq term1;  // (w_i + v_j - gamma_ij) / lambda + (n-1)
  MatrixXq term2;  // (w_i - alpha_i + v_j - beta_j) / lambda + 2(n-1)
  MatrixXq per_entry;
  std::optional<Rational> overall;  // absent when every entry is epsilon
  std::optional<BoundArgmax> argmax;
  // No cycle avoids node 1: the quotients are taken as their limit 0.
  bool lambda_acyclic = false;

  /// Smallest integer k with k > overall.
  std::optional<long> min_admissible_length() const;
};

/// Evaluates both terms entrywise. Epsilon numerators give epsilon (non-binding) entries.
BoundReport evaluate_bound(const BoundInputs& inputs, BoundMode mode);

/// alpha, beta, gamma, lambda* from the supremum matrix; w, v from the infimum matrix.
BoundInputs explicit_inputs(const MatrixFamily& family);

/// Any product strictly longer than `overall` is rank one.
BoundReport explicit_bound(const MatrixFamily& family);

/// Bound read off a realised product: w*_i = gamma_k(i,1), v*_j = gamma_k(1,j).
BoundReport implicit_bound(const MatrixFamily& family, const MatrixXq& gamma_k);

/// k > overall, exactly. Vacuously true when no entry constrains k.
bool check_length_sufficient(const BoundReport& report, std::size_t k);

}  // namespace tropical
