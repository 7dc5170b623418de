#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "padx/config.hpp"
#include "padx/dense.hpp"
#include "padx/sparse.hpp"

namespace padx {

/// A p-adic scalar in either representation.
class Scalar {
 public:
  Scalar(DensePAdic d) : value_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  Scalar(SparsePAdic s) : value_(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  bool is_dense() const { return std::holds_alternative<DensePAdic>(value_); }
  bool is_sparse() const { return std::holds_alternative<SparsePAdic>(value_); }
  const DensePAdic& dense() const { return std::get<DensePAdic>(value_); }
  const SparsePAdic& sparse() const { return std::get<SparsePAdic>(value_); }

  unsigned long prime() const;
  ExtValuation valuation() const;
  /// The value as an integer, when it is known exactly to be one.
  std::optional<BigInt> exact_integer() const;
  bool is_nonnegative_integer() const;
  std::optional<std::string> construction() const;

  /// Dense approximation; exact for dense input and for finite sparse
  /// numbers whose support fits the precision cap.
  DensePAdic to_dense(const Config& cfg) const;

  /// Indices where the sparse structure forces a large valuation: the
  /// partial sums m_j that are materializable and at most `limit`.
  std::vector<BigInt> partial_sum_indices(const BigInt& limit) const;

  std::string literal() const;

 private:
  std::variant<DensePAdic, SparsePAdic> value_;
};

/// Parses "rat:<num>/<den>", "int:<n>", "sparse:[k1,k2,...]",
/// "lebras:<p>,<depth>" or "digits:v=<v>;[d0,d1,...]".
Scalar parse_scalar(std::string_view literal, const Config& cfg);

/// v(lambda - j) computed from lambda mod p^cap. Exact below the cap,
/// LowerBound(cap) when the difference vanishes to that depth, and
/// PlusInfinity when lambda == j is decidable (exact rationals, finite
/// sparse numbers). For sparse numbers an exact cancellation of the
/// residue against j means j is a partial sum, and the valuation is the
/// next support exponent.
class DifferenceValuator {
 public:
  DifferenceValuator(const Scalar& lambda, BigInt cap);
  ExtValuation operator()(const BigInt& j) const;
  const BigInt& cap() const { return cap_; }

 private:
  unsigned long p_;
  BigInt cap_;
  enum class Mode { ExactRational, Residue, Constant, Sparse } mode_;
  BigInt num_, den_;  // exact rational lambda
  long den_val_ = 0;
  BigInt residue_;    // lambda mod p^effective_cap_
  BigInt effective_cap_;
  BigInt modulus_;    // p^effective_cap_ in Residue mode
  ExtValuation constant_ = ExtValuation::infinity();
  std::optional<SupportExponent> next_;
  bool finite_ = true;
};

ExtValuation valuation_of_difference(const Scalar& lambda, const BigInt& j, const BigInt& cap);

}  // namespace padx
