#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropical/matrix.hpp"

namespace tropical {

struct AssumptionVerdict {
  bool passed = true;
  std::string message;
  std::optional<std::size_t> member;  // 0-based member index, if a member is at fault
  std::vector<Index> witness;         // offending arc (two nodes) or cycle (node sequence)
};

/**
 * Outcome of the three structural checks:
 *  - common_support: members (and the entrywise infimum) share one support
 *    and every member is irreducible;
 *  - member_loop: every member has a weight-0 loop at node 1 as its unique
 *    critical cycle;
 *  - sup_loop: same condition for the entrywise supremum.
 */
struct ValidationReport {
  AssumptionVerdict common_support;
  AssumptionVerdict member_loop;
  AssumptionVerdict sup_loop;

  bool all_passed() const { return common_support.passed && member_loop.passed && sup_loop.passed; }
};

/// Entrywise supremum and infimum of a non-empty list of same-size matrices.
std::pair<MatrixXq, MatrixXq> derive_boundaries(const std::vector<MatrixXq>& members);

/// Finite set of square matrices with its boundary matrices and validation verdicts.
/// Immutable; everything is derived in the constructor.
class MatrixFamily {
 public:
  explicit MatrixFamily(std::vector<MatrixXq> members, std::vector<std::string> names = {});

  std::size_t size() const { return members_.size(); }
  Index dim() const { return members_.front().rows(); }

  const MatrixXq& member(std::size_t index) const { return members_.at(index); }
  const std::vector<MatrixXq>& members() const { return members_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  const MatrixXq& sup() const { return sup_; }
  const MatrixXq& inf() const { return inf_; }

  const ValidationReport& validation() const { return validation_; }
  bool valid() const { return validation_.all_passed(); }

  /// Throws AssumptionError naming the first failed check.
  void require_valid() const;

 private:
  std::vector<MatrixXq> members_;
  std::vector<std::string> names_;
  MatrixXq sup_;
  MatrixXq inf_;
  ValidationReport validation_;
};

ValidationReport validate(const MatrixFamily& family);

/// Heaviest walk weight from each node to node 1 on the infimum digraph, any length.
VectorXq inf_walks_to_pivot(const MatrixFamily& family);

/// Heaviest walk weight from node 1 to each node on the infimum digraph, any length.
VectorXq inf_walks_from_pivot(const MatrixFamily& family);

}  // namespace tropical
