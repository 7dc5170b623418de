#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padx/bigint.hpp"
#include "padx/config.hpp"
#include "padx/ext_valuation.hpp"

namespace padx {

/// A p-adic number p^v * u with u a unit. The unit is known modulo
/// p^known_precision; numbers built from rationals also remember u exactly,
/// and arithmetic between exact numbers stays exact.
///
/// Inexact arithmetic follows the ultrametric precision rules: a sum is
/// known to the smaller absolute precision of its summands, so leading
/// cancellation shrinks the relative precision of the result.
class DensePAdic {
 public:
  static DensePAdic zero(const Config& cfg);
  static DensePAdic from_integer(const Config& cfg, const BigInt& n);
  static DensePAdic from_rational(const Config& cfg, const BigInt& num, const BigInt& den);
  static DensePAdic from_rational(const Config& cfg, const BigRational& q);
  /// Digits d_0, d_1, ... of the unit part, least significant first.
  /// Leading zero digits are absorbed into the valuation.
  static DensePAdic from_digits(const Config& cfg, long valuation, std::span<const unsigned long> digits);
  static DensePAdic power_of_p(const Config& cfg, long e);

  const Config& config() const { return cfg_; }
  unsigned long prime() const { return cfg_.prime(); }

  bool is_zero() const { return zero_; }
  bool is_exact() const { return exact_unit_.has_value() || zero_; }
  ExtValuation valuation() const;
  /// Valuation of a nonzero value.
  long raw_valuation() const;
  long known_precision() const { return zero_ ? cfg_.precision() : precision_; }
  std::vector<unsigned long> digits() const;
  /// Unit part modulo p^ndigits. Exact numbers can supply any number of
  /// digits; inexact ones throw "precision loss" beyond known_precision.
  BigInt unit_residue(long ndigits) const;
  std::optional<BigRational> exact_value() const;
  std::optional<BigInt> as_integer() const;

  DensePAdic operator-() const;
  DensePAdic inverse() const;
  friend DensePAdic operator+(const DensePAdic& a, const DensePAdic& b);
  friend DensePAdic operator-(const DensePAdic& a, const DensePAdic& b) { return a + (-b); }
  friend DensePAdic operator*(const DensePAdic& a, const DensePAdic& b);
  friend DensePAdic operator/(const DensePAdic& a, const DensePAdic& b) { return a * b.inverse(); }
  friend bool operator==(const DensePAdic& a, const DensePAdic& b);

  std::string literal() const;

 private:
  explicit DensePAdic(const Config& cfg) : cfg_(cfg) {}
  static DensePAdic make_exact(const Config& cfg, long v, BigRational unit);
  static DensePAdic make_inexact(const Config& cfg, long v, BigInt unit, long prec);

  Config cfg_;
  bool zero_ = true;
  long valuation_ = 0;
  BigInt unit_;  // modulo p^precision_
  long precision_ = 0;
  std::optional<BigRational> exact_unit_;
};

}  // namespace padx
