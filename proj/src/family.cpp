#include "tropical/family.hpp"

#include "tropical/errors.hpp"
#include "tropical/format.hpp"
#include "tropical/graph.hpp"

namespace tropical {

namespace {

std::string arc_text(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string cycle_text(const std::vector<Index>& cycle) {
  std::string s;
  for (Index v : cycle) s += std::to_string(v + 1) + "->";
  return s + std::to_string(cycle.front() + 1);
}

// Weight-0 loop at node 1, and every other cycle strictly negative.
AssumptionVerdict check_pivot_loop(const MatrixXq& a, std::optional<std::size_t> member, const std::string& who) {
  AssumptionVerdict v;
  v.member = member;
  const Scalar& loop = a(kPivot, kPivot);
  if (loop.is_epsilon() || loop.value() != 0) {
    v.passed = false;
    v.message = who + ": loop (1,1) has weight " + to_string(loop) + ", expected 0";
    v.witness = {kPivot, kPivot};
    return v;
  }
  MatrixXq without_loop = a;
  without_loop(kPivot, kPivot) = Scalar();
  CycleMean<Rational> rest = max_cycle_mean(without_loop);
  if (rest.mean.is_finite() && rest.mean.value() >= 0) {
    v.passed = false;
    v.message = who + ": cycle " + cycle_text(rest.witness) + " has mean " + to_string(rest.mean) +
                ", so the loop at node 1 is not the unique critical cycle";
    v.witness = rest.witness;
    return v;
  }
  v.member.reset();
  return v;
}

ValidationReport run_validation(const std::vector<MatrixXq>& members, const MatrixXq& sup, const MatrixXq& inf) {
  ValidationReport report;

  auto& geo = report.common_support;
  const MatrixXq& first = members.front();
  auto first_difference = [&](const MatrixXq& other) -> std::optional<std::pair<Index, Index>> {
    for (Index i = 0; i < first.rows(); ++i)
      for (Index j = 0; j < first.cols(); ++j)
        if (first(i, j).is_finite() != other(i, j).is_finite()) return std::pair{i, j};
    return std::nullopt;
  };
  for (std::size_t m = 1; m < members.size() && geo.passed; ++m) {
    if (auto d = first_difference(members[m])) {
      geo = {false,
             "member " + std::to_string(m + 1) + " differs from member 1 in arc " + arc_text(d->first, d->second),
             m,
             {d->first, d->second}};
    }
  }
  if (geo.passed) {
    if (auto d = first_difference(inf)) {
      geo = {false, "infimum matrix differs from member 1 in arc " + arc_text(d->first, d->second), std::nullopt,
             {d->first, d->second}};
    }
  }
  for (std::size_t m = 0; m < members.size() && geo.passed; ++m) {
    if (!is_irreducible(members[m])) geo = {false, "member " + std::to_string(m + 1) + " is reducible", m, {}};
  }

  for (std::size_t m = 0; m < members.size(); ++m) {
    AssumptionVerdict v = check_pivot_loop(members[m], m, "member " + std::to_string(m + 1));
    if (!v.passed) {
      report.member_loop = v;
      break;
    }
  }
  report.sup_loop = check_pivot_loop(sup, std::nullopt, "supremum matrix");
  return report;
}

}  // namespace

std::pair<MatrixXq, MatrixXq> derive_boundaries(const std::vector<MatrixXq>& members) {
  if (members.empty()) throw DimensionError("derive_boundaries: empty family");
  MatrixXq sup = members.front();
  MatrixXq inf = members.front();
  for (std::size_t m = 1; m < members.size(); ++m) {
    const MatrixXq& x = members[m];
    if (x.rows() != sup.rows() || x.cols() != sup.cols()) throw DimensionError("derive_boundaries: size mismatch");
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) {
        if (sup(i, j) < x(i, j)) sup(i, j) = x(i, j);
        if (x(i, j) < inf(i, j)) inf(i, j) = x(i, j);
      }
  }
  return {std::move(sup), std::move(inf)};
}

MatrixFamily::MatrixFamily(std::vector<MatrixXq> members, std::vector<std::string> names)
    : members_(std::move(members)), names_(std::move(names)) {
  if (members_.empty()) throw DimensionError("MatrixFamily: no members");
  const Index n = members_.front().rows();
  for (const auto& m : members_) {
    if (m.rows() != n || m.cols() != n) throw DimensionError("MatrixFamily: members must all be n x n");
  }
  if (n == 0) throw DimensionError("MatrixFamily: empty matrices");
  if (names_.empty()) {
    for (std::size_t m = 0; m < members_.size(); ++m) names_.push_back("A" + std::to_string(m + 1));
  }
  if (names_.size() != members_.size()) throw DimensionError("MatrixFamily: one name per member");
  std::tie(sup_, inf_) = derive_boundaries(members_);
  validation_ = run_validation(members_, sup_, inf_);
}

void MatrixFamily::require_valid() const {
  for (const AssumptionVerdict* v : {&validation_.common_support, &validation_.member_loop, &validation_.sup_loop}) {
    if (!v->passed) throw AssumptionError(v->message);
  }
}

ValidationReport validate(const MatrixFamily& family) {
  return run_validation(family.members(), family.sup(), family.inf());
}

VectorXq inf_walks_to_pivot(const MatrixFamily& family) {
  family.require_valid();
  return best_paths_to_pivot(family.inf());
}

VectorXq inf_walks_from_pivot(const MatrixFamily& family) {
  family.require_valid();
  return best_paths_from_pivot(family.inf());
}

}  // namespace tropical
