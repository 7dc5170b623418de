#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padx/laurent.hpp"
#include "padx/type_classifier.hpp"
#include "padx/weyl.hpp"

namespace padx {

/// Finite sum  sum_k c_k x^k * x^lambda  on the punctured disk.
class NLambdaElement {
 public:
  NLambdaElement(Scalar lambda, const Config& cfg) : lambda_(std::move(lambda)), cfg_(cfg) {}

  /// The generator x^lambda.
  static NLambdaElement generator(const Scalar& lambda, const Config& cfg);
  static NLambdaElement monomial(const Scalar& lambda, const DensePAdic& c, long k);

  const Scalar& lambda() const { return lambda_; }
  const Config& config() const { return cfg_; }
  const std::map<long, DensePAdic>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  DensePAdic coefficient(long k) const;
  void set(long k, const DensePAdic& c);
  /// Adds c to the coefficient of x^k.
  void add(long k, const DensePAdic& c);

  /// The coefficients as a punctured-disk series.
  LaurentElement series() const;

  friend bool operator==(const NLambdaElement& a, const NLambdaElement& b);
  std::string literal() const;

 private:
  Scalar lambda_;
  Config cfg_;
  std::map<long, DensePAdic> coeffs_;
};

/// d acting on the twisted module: c x^k x^lambda -> c (lambda + k) x^{k-1} x^lambda.
NLambdaElement n_derive(const NLambdaElement& v);

/// sum_i g_i(x) d^i applied to v.
NLambdaElement n_apply(const OperatorElement& p, const NLambdaElement& v);

/// Truncation of a series times x^lambda on the punctured disk, with the
/// per-level membership evidence for its coefficient series.
struct MLambdaElement {
  Scalar lambda;
  LaurentElement series;
  MembershipReport membership;
};

MLambdaElement make_m_lambda(const Scalar& lambda, LaurentElement series, long n_max);

/// Roots of the monic b(s) = prod (s - lambda_t) and the norm of P(s).
struct BFunctionData {
  struct Root {
    Scalar value;
    int multiplicity = 1;
  };
  /// |P(s)| at level n is at most |p|^{exponent_at_level0 - n*order}.
  struct OperatorBound {
    long exponent_at_level0 = 0;
    long order = 1;
    long at_level(long n) const { return exponent_at_level0 - n * order; }
  };

  std::vector<Root> roots;
  OperatorBound bound;
  /// r with generator x^{-r} x^lambda; zero when no shift was needed.
  BigInt generator_shift = 0;
  std::optional<Scalar> lambda;

  /// Throws std::invalid_argument when some root is a non-negative integer.
  static BFunctionData from_roots(std::vector<Root> roots, OperatorBound bound);
};

/// P = d and b(s) = lambda - s. A non-negative integer lambda is moved to
/// -1 by the generator x^{-(lambda+1)} x^lambda.
BFunctionData bfunction_rank_one(const Scalar& lambda, const Config& cfg);

struct SufficientR {
  long level = 0;
  long j_max = 0;
  std::optional<long> r;
  long r_prime = 0;
  std::optional<long> r_double_prime;
  /// j*r + j*r' - sum_t V_j(lambda_t) for j = 1..j_max.
  std::vector<BigInt> validation;
  bool validated = false;
  std::vector<TypeVerdict> root_verdicts;
  /// Index into the roots of the first one without a witness.
  std::optional<std::size_t> failing_root;
  ClassifierOptions box;
};

/// Smallest r >= 0 (built from the root witnesses) with
/// v(p^{jr} P(j-1)...P(0) / prod_{s<j} b(s)) >= 0 at level n for j <= j_max.
/// Throws std::runtime_error("cap exceeded") if a root difference is only
/// known as a lower bound.
SufficientR sufficient_r(const BFunctionData& data, long n, long j_max, const ClassifierOptions& options = {});

struct ThetaPreimage {
  OperatorElement op;
  /// Empty when a truncated target has too few terms for the tail rule.
  std::optional<DHatMembershipReport> membership;
};

/// Constant-coefficient sum g_s d^s with (sum g_s d^s) x^lambda = target,
/// where target = sum_{s>=0} c_s x^{-s} x^lambda: g_s = c_s / prod_{j<s}(lambda - j).
/// Throws std::domain_error("lambda hits integer") on a zero factor.
ThetaPreimage theta_preimage(const Scalar& lambda, const LaurentElement& target, long n_max);

/// Valuations of g_s from valuations of c_s alone: v(c_s) - V_s.
/// Entries are empty when V_s is infinite or only a bound.
std::vector<std::optional<BigInt>> theta_preimage_exponents(const Scalar& lambda,
                                                            std::span<const std::pair<long, BigInt>> target,
                                                            const BigInt& cap);

struct ConstantReduction {
  std::vector<DensePAdic> h;
  /// min over the contributing coefficients of P; h_t is at least this.
  std::vector<ExtValuation> bound;
  OperatorElement op;
};

/// Collapses P = sum g_j(x) d^j to constants h_t with the same action on
/// x^lambda in non-positive degrees:
///   h_t = g_{0,t} + sum_{j>t} g_{j-t,j} (lambda-t)...(lambda-j+1),
/// g_{a,j} being the x^a coefficient of g_j. Requires v(lambda) >= 0.
ConstantReduction constant_reduction(const OperatorElement& p, const Scalar& lambda, long t_max);

struct WitnessStep {
  long r;
  long j;
  BigInt eps_exponent;  // r * j_r
  BigInt i;
  BigInt product_valuation;  // V_{i_r}
  BigInt margin;             // 2 r i_r - V_{i_r}
  BigInt coefficient_exponent;  // (2 i_r - j_r) r
  BigInt g_exponent;            // coefficient_exponent - V_{i_r}
};

struct WitnessReport {
  enum class Verdict { DivergenceWitnessed, NoWitnessInBox };
  Verdict verdict = Verdict::NoWitnessInBox;
  std::vector<WitnessStep> steps;
  /// sum_r p^{(2 i_r - j_r) r} x^{-i_r} x^lambda; empty for huge exponents.
  std::optional<LaurentElement> m;
  /// Margins (2 i_r - j_r) r - n i_r per level, tail-trend verdicts.
  MembershipReport membership;
  std::string reason;
  long r_max = 0;
  long i_max = 0;
  BigInt cap;
  bool witnessed() const { return verdict == Verdict::DivergenceWitnessed; }
};

std::string verdict_name(WitnessReport::Verdict v);

/// Searches r = 1..r_max for the chain eps_r = |p|^{r j_r}, i_r with
/// |p^{2 r i_r} / prod_{j<i_r}(lambda - j)| > eps_r. Candidates are
/// 1..i_max plus, for sparse lambda, m_j + 1 + t (t <= r_max).
WitnessReport divergence_witness(const Scalar& lambda, const Config& cfg, long r_max, long i_max, const BigInt& cap);

/// Recomputes every stored inequality of a witness from scratch. Returns
/// an empty string on success, else the first failure.
std::string verify_witness(const WitnessReport& report, const Scalar& lambda);

struct ProbeOptions {
  ClassifierOptions classifier;
  long n_max = 4;
  long j_max = 64;
  long witness_r_max = 4;
  long witness_i_max = 256;
};

struct ProbeVerdict {
  enum class Kind { CoadmissibleEvidence, DivergenceWitnessed, Inconclusive };
  Kind kind = Kind::Inconclusive;
  TypeVerdict classification;
  std::optional<BFunctionData> bfunction;
  std::vector<SufficientR> levels;  // n = 0..n_max, empty if a level failed early
  WitnessReport witness;
  /// Both branches produced evidence.
  bool conflict = false;
  std::string reason;
  ProbeOptions box;
};

std::string probe_kind_name(ProbeVerdict::Kind k);

ProbeVerdict coadmissibility_probe(const Scalar& lambda, const Config& cfg, const ProbeOptions& options = {});

}  // namespace padx
