#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "padx/dense.hpp"
#include "padx/ext_valuation.hpp"

namespace padx {

/// Which ring a truncated series is taken in: the Tate algebra K<x> of the
/// closed disk, the annulus U_n = {|p|^n <= |x| <= 1}, or the punctured
/// disk U = union of the U_n.
struct RingTag {
  enum class Kind { Disk, Annulus, PuncturedDisk };
  Kind kind = Kind::Disk;
  long level = 0;  // annulus level n

  static RingTag disk() { return {}; }
  static RingTag annulus(long n) { return {Kind::Annulus, n}; }
  static RingTag punctured() { return {Kind::PuncturedDisk, 0}; }
  friend bool operator==(const RingTag&, const RingTag&) = default;
  std::string to_string() const;
};

/// Norm on U_n as the exponent e with |f|_n = p^{-e}.
struct LevelNorm {
  long level = 0;
  ExtValuation exponent = ExtValuation::infinity();
};

struct WindowPolicy {
  long max_abs_index = 1L << 20;
  bool clip = true;
};

/// Finite window of a Laurent series sum_k c_k x^k with k in [low, high].
/// Zero coefficients are not stored. `truncated` marks a window cut out of
/// a longer series (or clipped by an operation).
class LaurentElement {
 public:
  LaurentElement(const Config& cfg, RingTag tag = RingTag::disk()) : cfg_(cfg), tag_(tag) {}

  static LaurentElement monomial(const DensePAdic& c, long k, RingTag tag);
  static LaurentElement constant(const DensePAdic& c) { return monomial(c, 0, RingTag::disk()); }
  /// x^k with coefficient 1.
  static LaurentElement x_power(const Config& cfg, long k, RingTag tag = RingTag::disk());

  const Config& config() const { return cfg_; }
  RingTag tag() const { return tag_; }
  long low() const { return low_; }
  long high() const { return high_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<long, DensePAdic>& terms() const { return coeffs_; }

  DensePAdic coefficient(long k) const;
  /// Sets c_k and widens the window to include k.
  void set(long k, const DensePAdic& c);
  void set_window(long low, long high);
  void set_truncated(bool t) { truncated_ = t; }
  LaurentElement with_tag(RingTag tag) const;

  /// sup_k |c_k| * max(1, |p|^{n k}) as an exponent: min_k v(c_k) + n*min(k, 0).
  LevelNorm level_norm(long n) const;
  /// Gauss valuation on the circle |x| = |p|^n: min_k v(c_k) + n*k.
  ExtValuation circle_valuation(long n) const;
  /// Level-0 norm; the Tate sup-norm for disk elements.
  ExtValuation gauss_valuation() const { return level_norm(0).exponent; }

  friend bool operator==(const LaurentElement& a, const LaurentElement& b);

  std::string literal() const;

 private:
  Config cfg_;
  RingTag tag_;
  std::map<long, DensePAdic> coeffs_;
  long low_ = 0;
  long high_ = 0;
  bool truncated_ = false;
};

/// Ring tag of a sum/product: disk elements restrict to any annulus,
/// punctured-disk elements restrict to U_n, two annuli meet in the smaller.
RingTag combine_tags(RingTag a, RingTag b);

LaurentElement l_add(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy = {});
LaurentElement l_sub(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy = {});
LaurentElement l_mul(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy = {});
LaurentElement l_scale(const LaurentElement& a, const DensePAdic& c);
/// d/dx: c_k x^k -> k c_k x^{k-1}.
LaurentElement l_derive(const LaurentElement& a);

/// Per-level evidence that a truncated punctured-disk series lies in
/// O(U) = lim O(U_n): |c_{-s}| p^{n s} decreasing along the materialized tail.
struct MembershipReport {
  struct Level {
    long level;
    std::vector<BigInt> margins;  // v(c_{-s}) - n*s over negative support, s increasing
    bool passes;
  };
  std::vector<Level> levels;
  bool finite = false;
  bool all_pass() const;
};

MembershipReport membership_in_O_U(const LaurentElement& a, long n_max);

/// Parses laurent:{k: 'scalar', ...} with optional ";tag=disk|annulus:<n>|punctured",
/// ";window=[lo,hi]" and ";truncated" suffixes.
LaurentElement parse_laurent(std::string_view literal, const Config& cfg);

}  // namespace padx
