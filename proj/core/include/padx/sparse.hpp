#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padx/bigint.hpp"
#include "padx/ext_valuation.hpp"

namespace padx {

/// Integers with more bits than this are kept symbolically as p^E.
inline constexpr std::size_t kMaterializeBits = std::size_t{1} << 16;
/// Largest p^k (in bits) that residue computations will build.
inline constexpr std::size_t kResidueBits = std::size_t{1} << 24;

/// A support exponent k_i: an exact integer, or p^E when p^E is too large
/// to hold. Symbolic exponents exceed 2^kMaterializeBits.
class SupportExponent {
 public:
  static SupportExponent exact(BigInt k) { return SupportExponent(std::move(k)); }
  /// p^e, materialized when small enough.
  static SupportExponent power(unsigned long p, const BigInt& e);

  bool materialized() const { return !symbolic_base_; }
  /// Throws std::out_of_range for symbolic exponents.
  const BigInt& value() const;
  /// The E of a symbolic p^E.
  const BigInt& power_exponent() const { return value_; }
  unsigned long power_base() const { return symbolic_base_; }

  /// k < b, decided exactly. Throws "cap exceeded" when b is too large
  /// to compare against a symbolic exponent.
  bool less_than(const BigInt& b) const;
  std::string to_string() const;

  friend bool operator==(const SupportExponent&, const SupportExponent&) = default;

 private:
  explicit SupportExponent(BigInt v, unsigned long base = 0) : value_(std::move(v)), symbolic_base_(base) {}
  BigInt value_;
  unsigned long symbolic_base_ = 0;
};

/// lambda = sum_i p^{k_i} with strictly increasing support. Either finite
/// (the listed support is everything) or an infinite construction whose
/// first depth() exponents are tracked.
class SparsePAdic {
 public:
  static SparsePAdic from_support(unsigned long p, std::vector<BigInt> exponents);
  /// k_1 = p, k_{n+1} = p^{2 k_n}; the resulting number is of type zero.
  static SparsePAdic le_bras(unsigned long p, std::size_t depth);

  unsigned long prime() const { return prime_; }
  const std::vector<SupportExponent>& support() const { return support_; }
  bool finite() const { return finite_; }
  bool is_zero() const { return finite_ && support_.empty(); }
  std::size_t depth() const { return support_.size(); }
  std::size_t materialized_depth() const;
  const std::optional<std::string>& construction() const { return construction_; }

  ExtValuation valuation() const;

  /// lambda - m_j, where m_j = sum_{i<=j} p^{k_i}. The result's support is
  /// {k_i : i > j}, so its valuation is exactly k_{j+1}.
  SparsePAdic sub_partial_sum(std::size_t j) const;

  /// m_j as an integer, when all p^{k_i} (i <= j) are small enough to build.
  std::optional<BigInt> partial_sum(std::size_t j) const;

  /// Sum of p^{k_i} over k_i < cap, i.e. lambda mod p^cap. Throws
  /// "cap exceeded" if a needed power cannot be built or if the tracked
  /// support does not reach the cap on an infinite construction.
  BigInt residue_below(const BigInt& cap) const;
  /// Index of the first support exponent >= cap, if tracked.
  std::optional<std::size_t> first_at_or_above(const BigInt& cap) const;

  /// Replace the part below `cap` by the integer `low` (which must have
  /// base-p digits in {0,1}); throws "cap exceeded" otherwise.
  SparsePAdic with_low_part(const BigInt& cap, const BigInt& low, std::optional<std::string> construction) const;

  std::string literal() const;

  friend bool operator==(const SparsePAdic&, const SparsePAdic&) = default;

 private:
  SparsePAdic() = default;
  unsigned long prime_ = 2;
  std::vector<SupportExponent> support_;
  bool finite_ = true;
  std::optional<std::string> construction_;
};

}  // namespace padx
