#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gtzw/exact.hpp"

namespace gtzw {

/// Weakly decreasing integer tuple (a dominant weight of U(N)).
/// The level-0 signature with no entries is the root vertex of the graph.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::int64_t> entries);
  Signature(std::initializer_list<std::int64_t> entries)
      : Signature(std::vector<std::int64_t>(entries)) {}

  std::size_t level() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const std::int64_t> entries() const { return entries_; }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }

  /// Sum of entries.
  std::int64_t total() const;
  /// (-la_N, ..., -la_1)
  Signature dual() const;
  /// "(3,1,0,-2)"; the empty signature prints as "()".
  std::string to_string() const;

  friend auto operator<=>(const Signature&, const Signature&) = default;
  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept;
};

/// nu < la in the Gelfand-Tsetlin order: la_i >= nu_i >= la_{i+1}.
/// Throws LevelMismatchError unless level(la) == level(nu) + 1.
bool interlaces(const Signature& nu, const Signature& la);

/// Calls f(nu) for every nu < la in lexicographic order.
void for_each_down(const Signature& la, const std::function<void(const Signature&)>& f);

/// All nu < la, lexicographically sorted. Level 1 gives the empty signature.
std::vector<Signature> enumerate_down(const Signature& la);

/// Number of nu < la (product of gaps + 1).
std::uint64_t count_down(const Signature& la);

/// Weyl dimension in exact 128-bit arithmetic; OverflowError if it does not fit.
u128 weyl_dim(const Signature& la);
/// Weyl dimension as an unbounded integer.
BigInt weyl_dim_big(const Signature& la);
/// log of the Weyl dimension, for levels where exact values overflow.
double log_weyl_dim(const Signature& la);

using YoungDiagram = std::vector<std::int64_t>;

/// A half-integer stored as twice its value, so comparisons stay exact.
struct HalfInteger {
  std::int64_t twice = 0;
  double value() const { return 0.5 * double(twice); }
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

/// Positive and negative parts of a signature with their modified Frobenius
/// coordinates p~_i = nu_i - i + 1/2, q~_i = nu'_i - i + 1/2 (i <= d(nu)).
/// Coordinate lists have length d(nu); entries beyond are zero.
struct FrobeniusSplit {
  YoungDiagram plus_part;
  YoungDiagram minus_part;
  std::vector<HalfInteger> modified_p_plus;
  std::vector<HalfInteger> modified_q_plus;
  std::vector<HalfInteger> modified_p_minus;
  std::vector<HalfInteger> modified_q_minus;
  std::int64_t size_plus = 0;
  std::int64_t size_minus = 0;
};

struct ModifiedFrobenius {
  std::vector<HalfInteger> p;
  std::vector<HalfInteger> q;
};

/// Modified Frobenius coordinates of a Young diagram (weakly decreasing,
/// nonnegative; trailing zeros allowed).
ModifiedFrobenius modified_frobenius(const YoungDiagram& diagram);

FrobeniusSplit frobenius_split(const Signature& la);

}  // namespace gtzw
