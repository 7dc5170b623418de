#include "padx/sparse.hpp"

#include <stdexcept>

namespace padx {

namespace {

// Bits of p^e, rounded up; only used to decide whether to build it.
BigInt bits_of_power(unsigned long p, const BigInt& e) { return e * static_cast<unsigned long>(bit_length(BigInt(p))); }

}  // namespace

SupportExponent SupportExponent::power(unsigned long p, const BigInt& e) {
  if (e < 0) throw std::invalid_argument("negative power exponent");
  if (bits_of_power(p, e) <= kMaterializeBits) return SupportExponent(pow_p(p, e.get_ui()));
  return SupportExponent(e, p);
}

const BigInt& SupportExponent::value() const {
  if (symbolic_base_) throw std::out_of_range("support exponent " + to_string() + " is not materializable");
  return value_;
}

bool SupportExponent::less_than(const BigInt& b) const {
  if (!symbolic_base_) return value_ < b;
  // Symbolic values have more than kMaterializeBits bits.
  if (bit_length(b) <= kMaterializeBits) return false;
  throw std::domain_error("cap exceeded");
}

std::string SupportExponent::to_string() const {
  if (!symbolic_base_) return value_.get_str();
  return std::to_string(symbolic_base_) + "^" + value_.get_str();
}

SparsePAdic SparsePAdic::from_support(unsigned long p, std::vector<BigInt> exponents) {
  SparsePAdic s;
  s.prime_ = p;
  for (std::size_t i = 1; i < exponents.size(); ++i)
    if (exponents[i] <= exponents[i - 1]) throw std::invalid_argument("sparse support must be strictly increasing");
  for (auto& k : exponents) s.support_.push_back(SupportExponent::exact(std::move(k)));
  return s;
}

SparsePAdic SparsePAdic::le_bras(unsigned long p, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("Le Bras depth must be >= 1");
  SparsePAdic s;
  s.prime_ = p;
  s.finite_ = false;
  s.construction_ = "lebras:" + std::to_string(p) + "," + std::to_string(depth);
  s.support_.push_back(SupportExponent::exact(p));
  for (std::size_t i = 1; i < depth; ++i) {
    const SupportExponent& prev = s.support_.back();
    if (!prev.materialized())
      throw std::domain_error("Le Bras exponent k_" + std::to_string(i + 1) + " = p^(2 k_" + std::to_string(i) +
                              ") with k_" + std::to_string(i) + " symbolic cannot be represented");
    s.support_.push_back(SupportExponent::power(p, 2 * prev.value()));
  }
  return s;
}

std::size_t SparsePAdic::materialized_depth() const {
  std::size_t n = 0;
  while (n < support_.size() && support_[n].materialized()) ++n;
  return n;
}

ExtValuation SparsePAdic::valuation() const {
  if (support_.empty()) {
    if (finite_) return ExtValuation::infinity();
    throw std::logic_error("infinite sparse number without tracked support");
  }
  const SupportExponent& k = support_.front();
  if (k.materialized()) return ExtValuation::exact(k.value());
  return ExtValuation::lower_bound(BigInt(1) << 64);
}

SparsePAdic SparsePAdic::sub_partial_sum(std::size_t j) const {
  const std::size_t limit = finite_ ? support_.size() : (support_.empty() ? 0 : support_.size() - 1);
  if (j > limit || (!finite_ && support_.empty()))
    throw std::out_of_range("insufficient depth: j=" + std::to_string(j) + " but only " +
                            std::to_string(limit) + " partial sums leave a tracked remainder");
  SparsePAdic r = *this;
  r.support_.erase(r.support_.begin(), r.support_.begin() + static_cast<std::ptrdiff_t>(j));
  if (construction_ && j > 0) r.construction_ = *construction_ + " - m_" + std::to_string(j);
  return r;
}

std::optional<BigInt> SparsePAdic::partial_sum(std::size_t j) const {
  if (j > support_.size()) return std::nullopt;
  BigInt m = 0;
  for (std::size_t i = 0; i < j; ++i) {
    const SupportExponent& k = support_[i];
    if (!k.materialized() || k.value() < 0) return std::nullopt;
    if (bits_of_power(prime_, k.value()) > kResidueBits) return std::nullopt;
    m += pow_p(prime_, k.value().get_ui());
  }
  return m;
}

std::optional<std::size_t> SparsePAdic::first_at_or_above(const BigInt& cap) const {
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (!support_[i].less_than(cap)) return i;
  return std::nullopt;
}

BigInt SparsePAdic::residue_below(const BigInt& cap) const {
  BigInt m = 0;
  std::size_t i = 0;
  for (; i < support_.size() && support_[i].less_than(cap); ++i) {
    const BigInt& k = support_[i].value();
    if (k < 0) throw std::domain_error("residue of a non-integral sparse number");
    if (bits_of_power(prime_, k) > kResidueBits) throw std::domain_error("cap exceeded");
    m += pow_p(prime_, k.get_ui());
  }
  if (i == support_.size() && !finite_) throw std::domain_error("cap exceeded: tracked support ends below the cap");
  return m;
}

SparsePAdic SparsePAdic::with_low_part(const BigInt& cap, const BigInt& low, std::optional<std::string> construction) const {
  if (low < 0) throw std::domain_error("cap exceeded: shift leaves a negative low part");
  std::vector<SupportExponent> out;
  BigInt rest = low;
  unsigned long pos = 0;
  while (rest != 0) {
    BigInt d = rest % prime_;
    if (d > 1) throw std::domain_error("cap exceeded: shifted value has a base-p digit > 1");
    if (d == 1) out.push_back(SupportExponent::exact(pos));
    rest /= prime_;
    ++pos;
  }
  if (!out.empty() && !out.back().less_than(cap)) throw std::domain_error("cap exceeded: carry reaches the cap");
  auto hi = first_at_or_above(cap);
  if (hi) out.insert(out.end(), support_.begin() + static_cast<std::ptrdiff_t>(*hi), support_.end());
  else if (!finite_) throw std::domain_error("cap exceeded");
  SparsePAdic r = *this;
  r.support_ = std::move(out);
  r.construction_ = std::move(construction);
  return r;
}

std::string SparsePAdic::literal() const {
  if (construction_ && construction_->rfind("lebras:", 0) == 0 && construction_->find(' ') == std::string::npos)
    return *construction_;
  std::string s = "sparse:[";
  for (std::size_t i = 0; i < support_.size(); ++i) s += (i ? "," : "") + support_[i].to_string();
  s += "]";
  if (!finite_) s += "+...";
  return s;
}

}  // namespace padx
