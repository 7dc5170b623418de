#pragma once

#include <compare>
#include <string>

#include "padx/bigint.hpp"

namespace padx {

/// A valuation that may be exact, +infinity (the value is exactly zero), or
/// only known to be at least some bound at the working precision.
class ExtValuation {
 public:
  enum class Kind { Exact, PlusInfinity, LowerBound };

  static ExtValuation exact(BigInt v) { return ExtValuation(Kind::Exact, std::move(v)); }
  static ExtValuation infinity() { return ExtValuation(Kind::PlusInfinity, 0); }
  static ExtValuation lower_bound(BigInt b) { return ExtValuation(Kind::LowerBound, std::move(b)); }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_infinite() const { return kind_ == Kind::PlusInfinity; }
  bool is_lower_bound() const { return kind_ == Kind::LowerBound; }

  /// Exact value, or the bound for LowerBound. Meaningless for infinity.
  const BigInt& value() const { return value_; }

  /// Valuation of a product: infinities absorb, bounds taint.
  friend ExtValuation operator+(const ExtValuation& a, const ExtValuation& b);
  friend ExtValuation operator-(const ExtValuation& a, const BigInt& shift);
  friend ExtValuation operator+(const ExtValuation& a, const BigInt& shift);

  /// Partial order: LowerBound(B) is above every exact value < B and
  /// unordered with anything it cannot be separated from.
  friend std::partial_ordering operator<=>(const ExtValuation& a, const ExtValuation& b);
  friend bool operator==(const ExtValuation& a, const ExtValuation& b);

  std::string to_string() const;

 private:
  ExtValuation(Kind k, BigInt v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  BigInt value_;
};

ExtValuation min(const ExtValuation& a, const ExtValuation& b);

}  // namespace padx
