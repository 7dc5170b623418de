#include "padx/ext_valuation.hpp"

namespace padx {

ExtValuation operator+(const ExtValuation& a, const ExtValuation& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtValuation::infinity();
  if (a.is_exact() && b.is_exact()) return ExtValuation::exact(a.value_ + b.value_);
  return ExtValuation::lower_bound(a.value_ + b.value_);
}

ExtValuation operator+(const ExtValuation& a, const BigInt& shift) {
  if (a.is_infinite()) return a;
  return ExtValuation(a.kind_, a.value_ + shift);
}

ExtValuation operator-(const ExtValuation& a, const BigInt& shift) { return a + BigInt(-shift); }

std::partial_ordering operator<=>(const ExtValuation& a, const ExtValuation& b) {
  using K = ExtValuation::Kind;
  if (a.kind_ == K::PlusInfinity && b.kind_ == K::PlusInfinity) return std::partial_ordering::equivalent;
  if (a.kind_ == K::Exact && b.kind_ == K::Exact) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  if (a.kind_ == K::PlusInfinity) return b.kind_ == K::Exact ? std::partial_ordering::greater
                                                             : std::partial_ordering::unordered;
  if (b.kind_ == K::PlusInfinity) return a.kind_ == K::Exact ? std::partial_ordering::less
                                                             : std::partial_ordering::unordered;
  if (a.kind_ == K::LowerBound && b.kind_ == K::Exact)
    return b.value_ < a.value_ ? std::partial_ordering::greater : std::partial_ordering::unordered;
  if (a.kind_ == K::Exact && b.kind_ == K::LowerBound)
    return a.value_ < b.value_ ? std::partial_ordering::less : std::partial_ordering::unordered;
  return std::partial_ordering::unordered;
}

bool operator==(const ExtValuation& a, const ExtValuation& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ == ExtValuation::Kind::PlusInfinity || a.value_ == b.value_;
}

std::string ExtValuation::to_string() const {
  switch (kind_) {
    case Kind::Exact: return value_.get_str();
    case Kind::PlusInfinity: return "+inf";
    case Kind::LowerBound: return ">=" + value_.get_str();
  }
  return {};
}

ExtValuation min(const ExtValuation& a, const ExtValuation& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  if (a.is_exact() && b.is_exact()) return a.value() <= b.value() ? a : b;
  // At least one bound: the minimum is exact only if an exact side is strictly smaller.
  if (a.is_exact() && a.value() <= b.value()) return a;
  if (b.is_exact() && b.value() <= a.value()) return b;
  return ExtValuation::lower_bound(a.value() < b.value() ? a.value() : b.value());
}

}  // namespace padx
