#include "tropical/trellis.hpp"

#include <utility>

#include "tropical/errors.hpp"
#include "tropical/format.hpp"
#include "tropical/graph.hpp"

namespace tropical {

namespace {

using Column = std::vector<Scalar>;

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

void relax(Scalar& slot, Scalar cand) {
  if (slot < cand) slot = std::move(cand);
}

struct Walk {
  Scalar weight;
  std::vector<NodeAt> nodes;
};

/**
 * Heaviest walk from:l0 -> to:l1. With avoid_pivot, node 1 may not appear
 * strictly between the endpoints. Among optima, the node sequence chosen is
 * the lexicographically smallest (backward values, then a greedy forward pass).
 */
Walk best_between(const TrellisDigraph& t, Index from, std::size_t l0, Index to, std::size_t l1, bool avoid_pivot) {
  const Index n = t.nodes();
  std::vector<Column> best(l1 - l0 + 1, Column(at(n)));
  best.back()[at(to)] = Scalar::unit();
  for (std::size_t l = l1; l-- > l0;) {
    const MatrixXq& a = t.layer(l + 1);
    Column& cur = best[l - l0];
    const Column& next = best[l + 1 - l0];
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v) {
        if (avoid_pivot && v == kPivot && l + 1 < l1) continue;
        relax(cur[at(u)], otimes(a(u, v), next[at(v)]));
      }
  }

  Walk w{best.front()[at(from)], {}};
  if (w.weight.is_epsilon()) return w;
  w.nodes.push_back({from, l0});
  Index cur = from;
  for (std::size_t l = l0; l < l1; ++l) {
    const MatrixXq& a = t.layer(l + 1);
    const Scalar& target = best[l - l0][at(cur)];
    for (Index v = 0; v < n; ++v) {
      if (avoid_pivot && v == kPivot && l + 1 < l1) continue;
      if (otimes(a(cur, v), best[l + 1 - l0][at(v)]) == target) {
        cur = v;
        break;
      }
    }
    w.nodes.push_back({cur, l + 1});
  }
  return w;
}

WalkSummary summarize(Walk w) {
  WalkSummary s;
  s.weight = std::move(w.weight);
  s.length = w.nodes.empty() ? 0 : w.nodes.size() - 1;
  s.min_length_among_optima = s.length;
  s.witness = std::move(w.nodes);
  return s;
}

void check_node(const TrellisDigraph& t, Index i) {
  if (i < 0 || i >= t.nodes()) throw std::out_of_range("trellis node " + std::to_string(i) + " out of range");
}

// Forward sweep over (not yet at node 1, already visited node 1).
std::pair<Scalar, Scalar> split_by_pivot(const TrellisDigraph& t, Index i, Index j) {
  check_node(t, i);
  check_node(t, j);
  const Index n = t.nodes();
  Column before(at(n)), after(at(n));
  (i == kPivot ? after : before)[at(i)] = Scalar::unit();
  for (std::size_t l = 1; l <= t.length(); ++l) {
    const MatrixXq& a = t.layer(l);
    Column nb(at(n)), na(at(n));
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v) {
        if (a(u, v).is_epsilon()) continue;
        relax(v == kPivot ? na[at(v)] : nb[at(v)], otimes(before[at(u)], a(u, v)));
        relax(na[at(v)], otimes(after[at(u)], a(u, v)));
      }
    before = std::move(nb);
    after = std::move(na);
  }
  return {after[at(j)], before[at(j)]};
}

class Enumerator {
 public:
  Enumerator(const TrellisDigraph& t, Index i, Index j, WalkClass cls) : t_(t), i_(i), j_(j), cls_(cls) {}

  WalkSummary run() {
    const std::size_t k = t_.length();
    switch (cls_) {
      case WalkClass::Full:
        path_ = {{i_, 0}};
        dfs(Scalar::unit());
        break;
      case WalkClass::Initial:
        path_ = {{i_, 0}};
        if (i_ == j_) {
          offer(Scalar::unit());
        } else {
          dfs(Scalar::unit());
        }
        break;
      case WalkClass::Final:
        for (std::size_t l = 0; l <= k; ++l) {
          path_ = {{i_, l}};
          if (l == k) {
            if (i_ == j_) offer(Scalar::unit());
          } else {
            dfs(Scalar::unit());
          }
        }
        break;
    }
    return best_;
  }

 private:
  void offer(const Scalar& weight) {
    const std::size_t len = path_.size() - 1;
    const bool better = best_.weight < weight || (found_ && weight == best_.weight && len < best_.length);
    if (!found_ || better) {
      if (!found_ && weight.is_epsilon()) return;
      found_ = true;
      best_.weight = weight;
      best_.length = len;
      best_.min_length_among_optima = len;
      best_.witness = path_;
    }
  }

  void dfs(const Scalar& weight) {
    const NodeAt here = path_.back();
    if (here.layer == t_.length()) {
      if (cls_ != WalkClass::Initial && here.node == j_) offer(weight);
      return;
    }
    const MatrixXq& a = t_.layer(here.layer + 1);
    for (Index v = 0; v < t_.nodes(); ++v) {
      if (a(here.node, v).is_epsilon()) continue;
      if (cls_ == WalkClass::Final && v == i_) continue;
      path_.push_back({v, here.layer + 1});
      Scalar next = otimes(weight, a(here.node, v));
      if (cls_ == WalkClass::Initial && v == j_) {
        offer(next);
      } else {
        dfs(next);
      }
      path_.pop_back();
    }
  }

  const TrellisDigraph& t_;
  Index i_, j_;
  WalkClass cls_;
  std::vector<NodeAt> path_;
  WalkSummary best_;
  bool found_ = false;
};

// numerator / lambda + offset; lambda = epsilon means no cycle avoids node 1.
Rational threshold(const Rational& numerator, const Scalar& lambda, long offset) {
  if (lambda.is_epsilon()) return Rational(offset);
  return Rational(numerator / lambda.value() + offset);
}

void note(LemmaCheck& c, bool ok, const std::string& detail) {
  ++c.checked;
  if (ok) return;
  if (c.failed++ == 0) c.first_failure = detail;
}

void settle(LemmaCheck& c) {
  if (c.checked == 0) {
    c.status = LemmaCheck::Status::Skipped;
  } else {
    c.status = c.failed == 0 ? LemmaCheck::Status::Pass : LemmaCheck::Status::Fail;
  }
}

std::string pair_text(Index i, Index j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

}  // namespace

TrellisDigraph::TrellisDigraph(const MatrixFamily& family, const ProductSequence& seq) : nodes_(family.dim()) {
  check_indices(family, seq);
  layers_.reserve(seq.size());
  for (std::size_t idx : seq.members) layers_.emplace_back(std::cref(family.member(idx - 1)));
}

Scalar rescore(const TrellisDigraph& t, const std::vector<NodeAt>& walk) {
  Scalar w = Scalar::unit();
  for (std::size_t s = 1; s < walk.size(); ++s) {
    if (walk[s].layer != walk[s - 1].layer + 1) return Scalar();
    w = otimes(w, t.layer(walk[s].layer)(walk[s - 1].node, walk[s].node));
  }
  return w;
}

WalkSummary optimal_full_walk(const TrellisDigraph& t, Index i, Index j) {
  check_node(t, i);
  check_node(t, j);
  return summarize(best_between(t, i, 0, j, t.length(), false));
}

WalkSummary optimal_initial_walk(const TrellisDigraph& t, Index i) {
  check_node(t, i);
  if (i == kPivot) return summarize({Scalar::unit(), {{kPivot, 0}}});
  const Index n = t.nodes();
  // reach[u]: heaviest walk i:0 -> u:l that has not met node 1
  Column reach(at(n));
  reach[at(i)] = Scalar::unit();
  Scalar best;
  std::size_t best_layer = 0;
  for (std::size_t l = 1; l <= t.length(); ++l) {
    const MatrixXq& a = t.layer(l);
    Column next(at(n));
    Scalar arrive;
    for (Index u = 1; u < n; ++u) {
      if (reach[at(u)].is_epsilon()) continue;
      relax(arrive, otimes(reach[at(u)], a(u, kPivot)));
      for (Index v = 1; v < n; ++v) relax(next[at(v)], otimes(reach[at(u)], a(u, v)));
    }
    if (best < arrive) {
      best = arrive;
      best_layer = l;
    }
    reach = std::move(next);
  }
  if (best.is_epsilon()) return {};
  return summarize(best_between(t, i, 0, kPivot, best_layer, true));
}

WalkSummary optimal_final_walk(const TrellisDigraph& t, Index j) {
  check_node(t, j);
  const std::size_t k = t.length();
  if (j == kPivot) return summarize({Scalar::unit(), {{kPivot, k}}});
  const Index n = t.nodes();
  // tail[u]: heaviest walk u:l -> j:k avoiding node 1
  Column tail(at(n));
  tail[at(j)] = Scalar::unit();
  Scalar best;
  std::size_t best_layer = 0;
  for (std::size_t l = k; l-- > 0;) {
    const MatrixXq& a = t.layer(l + 1);
    Column prev(at(n));
    Scalar depart;
    for (Index v = 1; v < n; ++v) {
      if (tail[at(v)].is_epsilon()) continue;
      relax(depart, otimes(a(kPivot, v), tail[at(v)]));
      for (Index u = 1; u < n; ++u) relax(prev[at(u)], otimes(a(u, v), tail[at(v)]));
    }
    // strict: on ties keep the later start, i.e. the shorter walk
    if (best < depart) {
      best = depart;
      best_layer = l;
    }
    tail = std::move(prev);
  }
  if (best.is_epsilon()) return {};
  return summarize(best_between(t, kPivot, best_layer, j, k, true));
}

VectorXq initial_walk_weights(const TrellisDigraph& t) {
  const Index n = t.nodes();
  Column first_hit(at(n));
  for (std::size_t l = t.length(); l-- > 0;) {
    const MatrixXq& a = t.layer(l + 1);
    Column prev(at(n));
    for (Index u = 1; u < n; ++u) {
      relax(prev[at(u)], a(u, kPivot));
      for (Index v = 1; v < n; ++v) relax(prev[at(u)], otimes(a(u, v), first_hit[at(v)]));
    }
    first_hit = std::move(prev);
  }
  VectorXq w(n);
  for (Index u = 0; u < n; ++u) w(u) = u == kPivot ? Scalar::unit() : first_hit[at(u)];
  return w;
}

VectorXq final_walk_weights(const TrellisDigraph& t) {
  const Index n = t.nodes();
  Column from_pivot(at(n));
  for (std::size_t l = 1; l <= t.length(); ++l) {
    const MatrixXq& a = t.layer(l);
    Column next(at(n));
    for (Index v = 1; v < n; ++v) {
      relax(next[at(v)], a(kPivot, v));
      for (Index u = 1; u < n; ++u) relax(next[at(v)], otimes(from_pivot[at(u)], a(u, v)));
    }
    from_pivot = std::move(next);
  }
  VectorXq v(n);
  for (Index u = 0; u < n; ++u) v(u) = u == kPivot ? Scalar::unit() : from_pivot[at(u)];
  return v;
}

Scalar best_walk_through_pivot(const TrellisDigraph& t, Index i, Index j) { return split_by_pivot(t, i, j).first; }

Scalar best_pivot_avoiding_walk(const TrellisDigraph& t, Index i, Index j) { return split_by_pivot(t, i, j).second; }

WalkSummary enumerate_walks(const TrellisDigraph& t, Index i, Index j, WalkClass cls) {
  check_node(t, i);
  check_node(t, j);
  if (t.nodes() > 6 || t.length() > 12) {
    throw BudgetExceeded("enumerate_walks: n = " + std::to_string(t.nodes()) + ", k = " +
                         std::to_string(t.length()) + " exceeds n <= 6, k <= 12");
  }
  return Enumerator(t, i, j, cls).run();
}

bool LemmaReport::all_passed() const {
  for (const LemmaCheck* c : {&initial_length, &final_length, &through_pivot, &avoiding_pivot})
    if (c->status == LemmaCheck::Status::Fail) return false;
  return true;
}

LemmaReport check_lemma_bounds(const TrellisDigraph& t, const LemmaInputs& in) {
  const Index n = t.nodes();
  const Rational k(static_cast<unsigned long>(t.length()));
  LemmaReport r;

  std::vector<bool> have_w(at(n)), have_v(at(n));
  for (Index i = 0; i < n; ++i) {
    have_w[at(i)] = in.w_star(i).is_finite() && in.alpha(i).is_finite();
    have_v[at(i)] = in.v_star(i).is_finite() && in.beta(i).is_finite();
  }

  for (Index i = 0; i < n; ++i) {
    if (have_w[at(i)]) {
      WalkSummary w = optimal_initial_walk(t, i);
      Rational limit = threshold(Rational(in.w_star(i).value() - in.alpha(i).value()), in.lambda, n - 1);
      note(r.initial_length, Rational(static_cast<unsigned long>(w.min_length_among_optima)) <= limit,
           "initial walk from " + std::to_string(i + 1) + " has length " + std::to_string(w.min_length_among_optima) +
               " > " + limit.get_str());
    }
    if (have_v[at(i)]) {
      WalkSummary v = optimal_final_walk(t, i);
      Rational limit = threshold(Rational(in.v_star(i).value() - in.beta(i).value()), in.lambda, n - 1);
      note(r.final_length, Rational(static_cast<unsigned long>(v.min_length_among_optima)) <= limit,
           "final walk to " + std::to_string(i + 1) + " has length " + std::to_string(v.min_length_among_optima) +
               " > " + limit.get_str());
    }
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!have_w[at(i)] || !have_v[at(j)]) continue;
      const Rational sum = in.w_star(i).value() + in.v_star(j).value();
      const auto [through, avoiding] = split_by_pivot(t, i, j);

      Rational slack = in.w_star(i).value() - in.alpha(i).value() + in.v_star(j).value() - in.beta(j).value();
      if (k > threshold(slack, in.lambda, 2 * (n - 1))) {
        note(r.through_pivot, through == Scalar(sum),
             pair_text(i, j) + ": best walk via node 1 weighs " + to_string(through) + ", expected " + sum.get_str());
      }

      const bool applies = in.gamma(i, j).is_epsilon() ||
                           k > threshold(Rational(sum - in.gamma(i, j).value()), in.lambda, n - 1);
      if (applies) {
        note(r.avoiding_pivot, avoiding < Scalar(sum),
             pair_text(i, j) + ": walk avoiding node 1 weighs " + to_string(avoiding) + ", not below " + sum.get_str());
      }
    }
  }

  settle(r.initial_length);
  settle(r.final_length);
  settle(r.through_pivot);
  settle(r.avoiding_pivot);
  return r;
}

LemmaInputs lemma_inputs(const MatrixFamily& family, const TrellisDigraph& t) {
  family.require_valid();
  const MatrixXq& sup = family.sup();
  return {best_paths_to_pivot(sup), best_paths_from_pivot(sup), pivot_avoiding_walks(sup),
          lambda_star(sup).mean,    initial_walk_weights(t),    final_walk_weights(t)};
}

}  // namespace tropical
