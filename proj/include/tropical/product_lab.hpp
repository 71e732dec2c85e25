#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tropical/family.hpp"
#include "tropical/matrix.hpp"

namespace tropical {

/// Factor list of an inhomogeneous product; member indices are 1-based.
struct ProductSequence {
  std::vector<std::size_t> members;
  std::optional<std::uint64_t> seed;

  std::size_t size() const { return members.size(); }
  bool operator==(const ProductSequence&) const = default;
};

/// Throws std::out_of_range naming the first index outside [1, family.size()].
void check_indices(const MatrixFamily& family, const ProductSequence& seq);

/// Left-to-right product of the listed members. Throws on an empty sequence.
MatrixXq fold(const MatrixFamily& family, const ProductSequence& seq);

/**
 * i.i.d. uniform member indices. The generator is std::mt19937_64 and indices
 * are drawn from its raw 64-bit output by rejection sampling, so a seed
 * reproduces the same sequence on every standard library.
 */
ProductSequence random_sequence(const MatrixFamily& family, std::size_t length, std::uint64_t seed);

enum class SearchMode { Exhaustive, Sampled };

struct TransientOptions {
  std::size_t horizon = 1;
  SearchMode mode = SearchMode::Sampled;
  std::size_t samples_per_length = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // exhaustive mode: cap on the total number of products examined
  std::uint64_t budget = 1U << 22;
  // counterexamples kept in the estimate; all are counted
  std::size_t max_counterexamples = 1000;
};

struct Counterexample {
  std::size_t length = 0;
  ProductSequence sequence;
};

/**
 * Horizon-bounded estimate of the rank-one transient. first_all_rank_one is
 * the smallest K such that every examined product with length in
 * [K, horizon] was rank one; it says nothing about lengths past the horizon.
 */
struct TransientEstimate {
  SearchMode mode = SearchMode::Sampled;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> first_all_rank_one;
  std::vector<std::size_t> examined;  // per length 1..horizon
  std::vector<std::size_t> failures;  // per length 1..horizon
  std::size_t counterexample_count = 0;
  std::vector<Counterexample> counterexamples;  // sorted by (length, sequence)
};

/// Product count of an exhaustive search up to `horizon` (saturating).
std::uint64_t exhaustive_cost(std::size_t members, std::size_t horizon);

/// Throws BudgetExceeded (exhaustive) or std::invalid_argument (horizon 0).
TransientEstimate estimate_transient(const MatrixFamily& family, const TransientOptions& options);

/// rank_one_factor succeeds; a matrix with epsilon at (1,1) counts as not rank one.
bool is_rank_one(const MatrixXq& m);

}  // namespace tropical
