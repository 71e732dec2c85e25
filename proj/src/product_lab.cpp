#include "tropical/product_lab.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "tropical/errors.hpp"

namespace tropical {

namespace {

std::size_t draw_index(std::mt19937_64& rng, std::size_t m) {
  const std::uint64_t range = m;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range) + 1;
}

// Keeps at most `cap` failures per length; finish() trims to the global cap.
void record_failure(TransientEstimate& est, std::size_t length, const ProductSequence& seq, std::size_t cap) {
  ++est.counterexample_count;
  if (est.failures[length - 1]++ < cap) est.counterexamples.push_back({length, seq});
}

void finish(TransientEstimate& est, std::size_t cap) {
  std::sort(est.counterexamples.begin(), est.counterexamples.end(), [](const auto& a, const auto& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.sequence.members < b.sequence.members;
  });
  if (est.counterexamples.size() > cap) est.counterexamples.resize(cap);
  est.first_all_rank_one.reset();
  for (std::size_t len = est.horizon; len >= 1; --len) {
    if (est.failures[len - 1] > 0) break;
    est.first_all_rank_one = len;
  }
}

void run_exhaustive(const MatrixFamily& family, const TransientOptions& opt, TransientEstimate& est) {
  const std::size_t m = family.size();
  // depth-first over all sequences, sharing prefix products
  std::vector<MatrixXq> prefix(opt.horizon + 1);
  ProductSequence seq;
  seq.members.reserve(opt.horizon);

  auto visit = [&](auto&& self, std::size_t depth) -> void {
    for (std::size_t idx = 1; idx <= m; ++idx) {
      seq.members.push_back(idx);
      prefix[depth + 1] = depth == 0 ? family.member(idx - 1) : product(prefix[depth], family.member(idx - 1));
      const std::size_t len = depth + 1;
      ++est.examined[len - 1];
      if (!is_rank_one(prefix[len])) record_failure(est, len, seq, opt.max_counterexamples);
      if (len < opt.horizon) self(self, len);
      seq.members.pop_back();
    }
  };
  visit(visit, 0);
}

void run_sampled(const MatrixFamily& family, const TransientOptions& opt, TransientEstimate& est) {
  std::mt19937_64 rng(opt.seed);
  std::vector<ProductSequence> work;
  work.reserve(opt.horizon * opt.samples_per_length);
  for (std::size_t len = 1; len <= opt.horizon; ++len)
    for (std::size_t s = 0; s < opt.samples_per_length; ++s) {
      ProductSequence seq;
      seq.members.reserve(len);
      for (std::size_t t = 0; t < len; ++t) seq.members.push_back(draw_index(rng, family.size()));
      work.push_back(std::move(seq));
    }

  std::vector<char> rank_one(work.size(), 0);
  const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(work.size())));
  auto worker = [&](unsigned id) {
    for (std::size_t w = id; w < work.size(); w += threads) rank_one[w] = is_rank_one(fold(family, work[w])) ? 1 : 0;
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& t : pool) t.join();

  for (std::size_t w = 0; w < work.size(); ++w) {
    const std::size_t len = work[w].size();
    ++est.examined[len - 1];
    if (!rank_one[w]) record_failure(est, len, work[w], std::numeric_limits<std::size_t>::max());
  }
}

}  // namespace

void check_indices(const MatrixFamily& family, const ProductSequence& seq) {
  for (std::size_t pos = 0; pos < seq.members.size(); ++pos) {
    const std::size_t idx = seq.members[pos];
    if (idx < 1 || idx > family.size()) {
      throw std::out_of_range("sequence position " + std::to_string(pos + 1) + ": member index " +
                              std::to_string(idx) + " outside 1.." + std::to_string(family.size()));
    }
  }
}

MatrixXq fold(const MatrixFamily& family, const ProductSequence& seq) {
  if (seq.members.empty()) throw std::invalid_argument("fold: empty sequence");
  check_indices(family, seq);
  MatrixXq acc = family.member(seq.members.front() - 1);
  for (std::size_t pos = 1; pos < seq.members.size(); ++pos) acc = product(acc, family.member(seq.members[pos] - 1));
  return acc;
}

ProductSequence random_sequence(const MatrixFamily& family, std::size_t length, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("random_sequence: length must be at least 1");
  std::mt19937_64 rng(seed);
  ProductSequence seq;
  seq.seed = seed;
  seq.members.reserve(length);
  for (std::size_t t = 0; t < length; ++t) seq.members.push_back(draw_index(rng, family.size()));
  return seq;
}

// Same test as rank_one_factor without building the factors.
bool is_rank_one(const MatrixXq& m) {
  if (m(kPivot, kPivot).is_epsilon()) return false;
  const Rational& pivot = m(kPivot, kPivot).value();
  Rational rhs;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const bool finite = m(i, kPivot).is_finite() && m(kPivot, j).is_finite();
      if (finite != m(i, j).is_finite()) return false;
      if (!finite) continue;
      rhs = m(i, kPivot).value() + m(kPivot, j).value();
      rhs -= pivot;
      if (rhs != m(i, j).value()) return false;
    }
  }
  return true;
}

std::uint64_t exhaustive_cost(std::size_t members, std::size_t horizon) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (std::size_t len = 1; len <= horizon; ++len) {
    if (level > kMax / members) return kMax;
    level *= members;
    if (total > kMax - level) return kMax;
    total += level;
  }
  return total;
}

TransientEstimate estimate_transient(const MatrixFamily& family, const TransientOptions& opt) {
  if (opt.horizon == 0) throw std::invalid_argument("estimate_transient: horizon must be at least 1");
  TransientEstimate est;
  est.mode = opt.mode;
  est.horizon = opt.horizon;
  est.seed = opt.seed;
  est.examined.assign(opt.horizon, 0);
  est.failures.assign(opt.horizon, 0);

  if (opt.mode == SearchMode::Exhaustive) {
    const std::uint64_t cost = exhaustive_cost(family.size(), opt.horizon);
    if (cost > opt.budget) {
      throw BudgetExceeded("exhaustive search needs " + std::to_string(cost) + " products, budget is " +
                           std::to_string(opt.budget));
    }
    run_exhaustive(family, opt, est);
  } else {
    if (opt.samples_per_length == 0) throw std::invalid_argument("estimate_transient: samples_per_length is 0");
    run_sampled(family, opt, est);
  }
  finish(est, opt.max_counterexamples);
  return est;
}

}  // namespace tropical
