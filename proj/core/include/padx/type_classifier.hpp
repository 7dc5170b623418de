#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padx/bigint.hpp"
#include "padx/ext_valuation.hpp"
#include "padx/scalar.hpp"

namespace padx {

/// Search box shared by the positive-type tests.
struct ClassifierOptions {
  long horizon = 64;
  long r_max = 8;
  BigInt cap = BigInt(1) << 20;
  /// Tail margins must exceed this to count as growing.
  long threshold = 8;
  /// Partial-sum indices of sparse numbers beyond this are not visited.
  BigInt index_limit = BigInt(1) << 22;
};

/// V_i = v(prod_{j<i} (lambda - j)) for i = 1..horizon.
struct ProductProfile {
  long horizon = 0;
  std::vector<ExtValuation> values;  // values[i-1] == V_i
  bool zero_hit = false;
  std::optional<long> zero_index;

  const ExtValuation& at(long i) const { return values.at(static_cast<std::size_t>(i - 1)); }
};

ProductProfile product_profile(const Scalar& lambda, long horizon, const BigInt& cap);

/// V_i at arbitrary increasing indices (each >= 1), accumulated in one pass.
std::vector<ExtValuation> product_valuations_at(const Scalar& lambda, std::span<const long> indices, const BigInt& cap);

struct StructuralMargin {
  BigInt index;
  std::optional<BigInt> margin;  // empty when not certifiable
};

struct TypeVerdict {
  enum class Category { PositiveInteger, PositiveWitness, NoWitnessUpTo };

  Category category = Category::NoWitnessUpTo;
  long r = -1;
  /// Tail margins i*r - V_i for the witness.
  std::vector<BigInt> margins;
  std::vector<StructuralMargin> structural;
  /// Present for numbers whose construction proves type zero.
  std::optional<std::string> proof_tag;
  ClassifierOptions box;

  bool positive() const { return category != Category::NoWitnessUpTo; }
};

std::string category_name(TypeVerdict::Category c);

/// Definition-style test: is there r <= r_max with
/// i*r - v(prod_{j<i}(lambda - j)) growing on the searched box?
/// Throws std::invalid_argument("insufficient horizon") for horizon < 8.
TypeVerdict classify_positive_type(const Scalar& lambda, const ClassifierOptions& options = {});

/// Margins i*r - V_i for i = 1..horizon (empty entries where V_i is not exact).
std::vector<std::optional<BigInt>> product_margins(const ProductProfile& profile, long r);

/// Radius-of-convergence view: v(lambda - i)/i over the window, plus the
/// single-difference witness test i*r - v(lambda - i).
struct TypeEstimate {
  struct Entry {
    long i;
    ExtValuation v;
    std::optional<BigRational> ratio;
  };
  long horizon = 0;
  std::vector<Entry> entries;  // excluded i (i == lambda) are omitted
  std::vector<BigRational> running_max;
  std::optional<BigRational> radius_bound_exponent;
  bool bound_is_partial = false;  // some v(lambda - i) only known as a bound
  std::optional<long> witness_r;
  ClassifierOptions box;
};

TypeEstimate type_estimate(const Scalar& lambda, const ClassifierOptions& options = {});

/// Single-difference witness search alone.
std::optional<long> difference_witness(const Scalar& lambda, const ClassifierOptions& options);

struct EquivalenceReport {
  TypeVerdict product;
  std::optional<long> difference_r;
  bool agree = false;
};

EquivalenceReport equivalence_probe(const Scalar& lambda, const ClassifierOptions& options = {});

/// Coefficients of sum_i x^i / (lambda (1-lambda) ... (i-lambda)) and of
/// e^x * sum_i (-x)^i / (i! (lambda - i)) up to x^order, in exact rationals.
struct IdentityCheck {
  std::vector<BigRational> lhs;
  std::vector<BigRational> rhs;
  std::vector<BigRational> residuals;
  bool all_zero() const;
};

/// Throws std::domain_error listing the offending i when lambda is in {0..order}.
IdentityCheck kedlaya_identity_check(const BigRational& lambda, long order);

/// Exponents r*m_j - k_{j+1} of |p^{r m_j} / (lambda - m_j)| for a sparse
/// lambda, for j = 1..depth.
struct DivergenceTable {
  struct Row {
    long r;
    std::size_t j;
    BigInt exponent;
  };
  std::vector<Row> rows;
  std::vector<std::pair<long, bool>> strictly_decreasing;  // per r
  std::size_t depth = 0;
  bool all_decreasing() const;
};

/// Largest j for which m_j and k_{j+1} are both materializable.
std::size_t divergence_depth(const SparsePAdic& lambda);

/// Throws std::out_of_range("insufficient depth") if depth exceeds divergence_depth.
DivergenceTable lebras_divergence_check(const SparsePAdic& lambda, std::span<const long> r_values, std::size_t depth);

/// lambda - n. Sparse inputs must absorb n below the cap.
Scalar shift(const Scalar& lambda, const BigInt& n, const BigInt& cap, const Config& cfg);

}  // namespace padx
