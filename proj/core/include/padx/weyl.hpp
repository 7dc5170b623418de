#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padx/laurent.hpp"

namespace padx {

/// Truncated differential operator sum_{i<=d} g_i(x) d^i on the disk, with
/// coefficients in K<x>. `truncated` marks a window cut out of an infinite
/// sum, as for elements of the completion D-hat.
class OperatorElement {
 public:
  explicit OperatorElement(const Config& cfg) : cfg_(cfg) {}

  /// sum_i g_i d^i with scalar g_i.
  static OperatorElement constant_coefficient(const Config& cfg, const std::vector<DensePAdic>& g, bool truncated = false);
  static OperatorElement identity(const Config& cfg);
  /// d^i.
  static OperatorElement derivation_power(const Config& cfg, long i);
  /// Multiplication by a disk element.
  static OperatorElement multiplication(const LaurentElement& g);

  const Config& config() const { return cfg_; }
  long order() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool truncated() const { return truncated_; }
  void set_truncated(bool t) { truncated_ = t; }
  const std::vector<LaurentElement>& coefficients() const { return coeffs_; }
  /// g_i, zero past the order.
  LaurentElement coefficient(long i) const;
  void set(long i, const LaurentElement& g);
  bool is_constant_coefficient() const;

  friend bool operator==(const OperatorElement& a, const OperatorElement& b);

  std::string literal() const;

 private:
  void trim();
  Config cfg_;
  std::vector<LaurentElement> coeffs_;
  bool truncated_ = false;
};

struct OperatorPolicy {
  long order_cap = 64;
  bool clip = true;
  WindowPolicy window;
};

OperatorElement op_add(const OperatorElement& a, const OperatorElement& b);
OperatorElement op_sub(const OperatorElement& a, const OperatorElement& b);

/// P o Q using d^i o g = sum_k binom(i,k) g^{(k)} d^{i-k}.
OperatorElement op_compose(const OperatorElement& p, const OperatorElement& q, const OperatorPolicy& policy = {});

/// sum_i g_i (d/dx)^i a.
LaurentElement op_apply(const OperatorElement& p, const LaurentElement& a, const WindowPolicy& policy = {});

/// Exponent of the level-n norm max_i |g_i| p^{n i}: min_i (v(g_i) - n i).
LevelNorm level_norm(const OperatorElement& p, long n);

/// Per-level evidence for membership of a truncated operator in D-hat:
/// v(g_i) - n i increasing along the materialized tail.
struct DHatMembershipReport {
  struct Level {
    long level;
    std::vector<BigInt> margins;
    bool passes;
  };
  std::vector<Level> levels;
  bool finite = false;
  bool all_pass() const;
  /// Highest level up to which every level passes, or -1.
  long passes_through() const;
};

/// Throws std::invalid_argument("tail too short") for truncated operators
/// with fewer than 8 materialized terms.
DHatMembershipReport dhat_membership(const OperatorElement& p, long n_max);

/// Parses op:[(i, <series literal>), ...] with an optional ";truncated" suffix.
OperatorElement parse_operator(std::string_view literal, const Config& cfg);

BigInt binomial(long n, long k);

}  // namespace padx
