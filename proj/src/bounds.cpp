#include "tropical/bounds.hpp"

#include "tropical/errors.hpp"
#include "tropical/graph.hpp"

namespace tropical {

namespace {

// numerator / lambda + offset, with epsilon numerators passed through.
Scalar bound_term(const Scalar& numerator, const Scalar& lambda, long offset) {
  if (numerator.is_epsilon()) return Scalar();
  if (lambda.is_epsilon()) return Scalar(Rational(offset));
  return Scalar(Rational(numerator.value() / lambda.value() + offset));
}

Scalar difference(const Scalar& a, const Scalar& b) {
  if (a.is_epsilon() || b.is_epsilon()) return Scalar();
  return Scalar(Rational(a.value() - b.value()));
}

}  // namespace

std::optional<long> BoundReport::min_admissible_length() const {
  if (!overall) return std::nullopt;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), overall->get_num_mpz_t(), overall->get_den_mpz_t());
  return fl.get_si() + 1;
}

BoundReport evaluate_bound(const BoundInputs& in, BoundMode mode) {
  const Index n = in.gamma.rows();
  if (in.gamma.cols() != n || in.to_pivot.size() != n || in.from_pivot.size() != n || in.alpha.size() != n ||
      in.beta.size() != n) {
    throw DimensionError("evaluate_bound: inconsistent input sizes");
  }
  if (in.lambda.is_finite() && in.lambda.value() >= 0) {
    throw AssumptionError("evaluate_bound: lambda* = " + in.lambda.value().get_str() + " is not negative");
  }

  BoundReport r;
  r.mode = mode;
  r.lambda_acyclic = in.lambda.is_epsilon();
  r.term1 = epsilon_matrix<Rational>(n, n);
  r.term2 = epsilon_matrix<Rational>(n, n);
  r.per_entry = epsilon_matrix<Rational>(n, n);

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Scalar walk_sum = otimes(in.to_pivot(i), in.from_pivot(j));
      r.term1(i, j) = bound_term(difference(walk_sum, in.gamma(i, j)), in.lambda, n - 1);
      Scalar slack = otimes(difference(in.to_pivot(i), in.alpha(i)), difference(in.from_pivot(j), in.beta(j)));
      r.term2(i, j) = bound_term(slack, in.lambda, 2 * (n - 1));
      r.per_entry(i, j) = oplus(r.term1(i, j), r.term2(i, j));

      for (BoundTerm t : {BoundTerm::AvoidPivot, BoundTerm::ThroughPivot}) {
        const Scalar& e = t == BoundTerm::AvoidPivot ? r.term1(i, j) : r.term2(i, j);
        if (e.is_epsilon()) continue;
        if (!r.overall || *r.overall < e.value()) {
          r.overall = e.value();
          r.argmax = BoundArgmax{i, j, t};
        }
      }
    }
  }
  return r;
}

BoundInputs explicit_inputs(const MatrixFamily& family) {
  family.require_valid();
  const MatrixXq& sup = family.sup();
  return BoundInputs{inf_walks_to_pivot(family),   inf_walks_from_pivot(family), best_paths_to_pivot(sup),
                     best_paths_from_pivot(sup),   pivot_avoiding_walks(sup),    lambda_star(sup).mean};
}

BoundReport explicit_bound(const MatrixFamily& family) {
  return evaluate_bound(explicit_inputs(family), BoundMode::Explicit);
}

BoundReport implicit_bound(const MatrixFamily& family, const MatrixXq& gamma_k) {
  if (gamma_k.rows() != family.dim() || gamma_k.cols() != family.dim()) {
    throw DimensionError("implicit_bound: product has the wrong size");
  }
  BoundInputs in = explicit_inputs(family);
  in.to_pivot = gamma_k.col(kPivot);
  in.from_pivot = gamma_k.row(kPivot).transpose();
  return evaluate_bound(in, BoundMode::Implicit);
}

bool check_length_sufficient(const BoundReport& report, std::size_t k) {
  if (!report.overall) return true;
  return Rational(static_cast<unsigned long>(k)) > *report.overall;
}

}  // namespace tropical
