#pragma once

#include <compare>
#include <concepts>
#include <optional>
#include <utility>

#include <gmpxx.h>

namespace tropical {

/// Exact weight type used throughout the library.
using Rational = mpq_class;

struct EpsilonTag {
  explicit constexpr EpsilonTag(int) {}
};

/// Stand-in for the max-plus zero (-inf) in matrix literals.
inline constexpr EpsilonTag eps{0};

/**
 * An element of the max-plus semiring over R: either a finite value or
 * epsilon (-inf). Epsilon is a separate state, not a reserved number.
 *
 * A default-constructed MaxPlus is epsilon, so freshly allocated dense
 * matrices start as the max-plus zero matrix.
 */
template <class R>
class MaxPlus {
 public:
  using value_type = R;

  MaxPlus() = default;
  MaxPlus(EpsilonTag) {}
  MaxPlus(R value) : value_(std::move(value)) {}
  template <std::integral I>
  MaxPlus(I value) : value_(R(static_cast<long>(value))) {}

  static MaxPlus epsilon() { return MaxPlus(); }
  static MaxPlus unit() { return MaxPlus(R(0)); }

  bool is_epsilon() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Finite value; throws std::bad_optional_access on epsilon.
  const R& value() const { return value_.value(); }

  friend bool operator==(const MaxPlus& a, const MaxPlus& b) {
    if (a.is_epsilon() || b.is_epsilon()) return a.is_epsilon() == b.is_epsilon();
    return *a.value_ == *b.value_;
  }

  friend std::weak_ordering operator<=>(const MaxPlus& a, const MaxPlus& b) {
    if (a.is_epsilon() && b.is_epsilon()) return std::weak_ordering::equivalent;
    if (a.is_epsilon()) return std::weak_ordering::less;
    if (b.is_epsilon()) return std::weak_ordering::greater;
    if (*a.value_ < *b.value_) return std::weak_ordering::less;
    if (*b.value_ < *a.value_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  std::optional<R> value_;
};

/// a (+) b = max(a, b)
template <class R>
MaxPlus<R> oplus(const MaxPlus<R>& a, const MaxPlus<R>& b) {
  return a < b ? b : a;
}

/// a (x) b = a + b, absorbing on epsilon
template <class R>
MaxPlus<R> otimes(const MaxPlus<R>& a, const MaxPlus<R>& b) {
  if (a.is_epsilon() || b.is_epsilon()) return MaxPlus<R>();
  return MaxPlus<R>(R(a.value() + b.value()));
}

using Scalar = MaxPlus<Rational>;

}  // namespace tropical
