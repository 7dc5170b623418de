#include "padx/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "padx/evidence.hpp"
#include "padx/scalar.hpp"
#include "text_util.hpp"

namespace padx {

std::string RingTag::to_string() const {
  switch (kind) {
    case Kind::Disk: return "disk";
    case Kind::Annulus: return "annulus:" + std::to_string(level);
    case Kind::PuncturedDisk: return "punctured";
  }
  return {};
}

LaurentElement LaurentElement::monomial(const DensePAdic& c, long k, RingTag tag) {
  LaurentElement e(c.config(), tag);
  e.set_window(k, k);
  e.set(k, c);
  return e;
}

LaurentElement LaurentElement::x_power(const Config& cfg, long k, RingTag tag) {
  return monomial(DensePAdic::from_integer(cfg, 1), k, tag);
}

DensePAdic LaurentElement::coefficient(long k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? DensePAdic::zero(cfg_) : it->second;
}

void LaurentElement::set(long k, const DensePAdic& c) {
  if (tag_.kind == RingTag::Kind::Disk && k < 0)
    throw std::invalid_argument("disk element cannot have negative powers");
  low_ = std::min(low_, k);
  high_ = std::max(high_, k);
  if (c.is_zero()) coeffs_.erase(k);
  else coeffs_.insert_or_assign(k, c);
}

void LaurentElement::set_window(long low, long high) {
  if (low > high) throw std::invalid_argument("empty window");
  if (tag_.kind == RingTag::Kind::Disk && low < 0) throw std::invalid_argument("disk window must start at 0 or later");
  if (!coeffs_.empty() && (coeffs_.begin()->first < low || coeffs_.rbegin()->first > high))
    throw std::invalid_argument("window does not contain the support");
  low_ = low;
  high_ = high;
}

LaurentElement LaurentElement::with_tag(RingTag tag) const {
  LaurentElement e = *this;
  if (tag.kind == RingTag::Kind::Disk && low_ < 0) throw std::invalid_argument("disk element cannot have negative powers");
  e.tag_ = tag;
  return e;
}

LevelNorm LaurentElement::level_norm(long n) const {
  LevelNorm out{n, ExtValuation::infinity()};
  for (const auto& [k, c] : coeffs_) out.exponent = min(out.exponent, c.valuation() + BigInt(n * std::min(k, 0L)));
  return out;
}

ExtValuation LaurentElement::circle_valuation(long n) const {
  ExtValuation out = ExtValuation::infinity();
  for (const auto& [k, c] : coeffs_) out = min(out, c.valuation() + BigInt(n * k));
  return out;
}

bool operator==(const LaurentElement& a, const LaurentElement& b) { return a.coeffs_ == b.coeffs_; }

std::string LaurentElement::literal() const {
  std::string s = "laurent:{";
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    s += (first ? "" : ", ") + std::to_string(k) + ": '" + c.literal() + "'";
    first = false;
  }
  s += "};tag=" + tag_.to_string() + ";window=[" + std::to_string(low_) + "," + std::to_string(high_) + "]";
  if (truncated_) s += ";truncated";
  return s;
}

RingTag combine_tags(RingTag a, RingTag b) {
  using K = RingTag::Kind;
  if (a.kind == K::Disk) return b;
  if (b.kind == K::Disk) return a;
  if (a.kind == K::PuncturedDisk) return b;
  if (b.kind == K::PuncturedDisk) return a;
  return RingTag::annulus(std::min(a.level, b.level));
}

namespace {

LaurentElement apply_policy(LaurentElement e, long low, long high, const WindowPolicy& policy) {
  const long cap = policy.max_abs_index;
  if (low < -cap || high > cap) {
    if (!policy.clip) throw std::length_error("window overflow");
    low = std::max(low, -cap);
    high = std::min(high, cap);
    LaurentElement clipped(e.config(), e.tag());
    clipped.set_window(low, high);
    for (const auto& [k, c] : e.terms())
      if (k >= low && k <= high) clipped.set(k, c);
    clipped.set_truncated(true);
    return clipped;
  }
  e.set_window(low, high);
  return e;
}

}  // namespace

LaurentElement l_add(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy) {
  LaurentElement r(a.config(), combine_tags(a.tag(), b.tag()));
  for (const auto& [k, c] : a.terms()) r.set(k, c);
  for (const auto& [k, c] : b.terms()) r.set(k, r.coefficient(k) + c);
  r.set_truncated(a.truncated() || b.truncated());
  return apply_policy(std::move(r), std::min(a.low(), b.low()), std::max(a.high(), b.high()), policy);
}

LaurentElement l_scale(const LaurentElement& a, const DensePAdic& c) {
  LaurentElement r(a.config(), a.tag());
  r.set_window(a.low(), a.high());
  for (const auto& [k, v] : a.terms()) r.set(k, v * c);
  r.set_truncated(a.truncated());
  return r;
}

LaurentElement l_sub(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy) {
  return l_add(a, l_scale(b, DensePAdic::from_integer(b.config(), -1)), policy);
}

LaurentElement l_mul(const LaurentElement& a, const LaurentElement& b, const WindowPolicy& policy) {
  LaurentElement r(a.config(), combine_tags(a.tag(), b.tag()));
  std::map<long, DensePAdic> acc;
  for (const auto& [i, x] : a.terms())
    for (const auto& [j, y] : b.terms()) {
      auto [it, inserted] = acc.try_emplace(i + j, x * y);
      if (!inserted) it->second = it->second + x * y;
    }
  for (const auto& [k, c] : acc) r.set(k, c);
  r.set_truncated(a.truncated() || b.truncated());
  return apply_policy(std::move(r), a.low() + b.low(), a.high() + b.high(), policy);
}

LaurentElement l_derive(const LaurentElement& a) {
  LaurentElement r(a.config(), a.tag());
  const long low = a.low() < 0 ? a.low() - 1 : a.low();
  r.set_window(low, std::max(a.high() - 1, low));
  for (const auto& [k, c] : a.terms())
    if (k != 0) r.set(k - 1, c * DensePAdic::from_integer(a.config(), k));
  r.set_truncated(a.truncated());
  return r;
}

bool MembershipReport::all_pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const Level& l) { return l.passes; });
}

MembershipReport membership_in_O_U(const LaurentElement& a, long n_max) {
  MembershipReport rep;
  rep.finite = !a.truncated();
  for (long n = 0; n <= n_max; ++n) {
    MembershipReport::Level lvl{n, {}, true};
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
      if (it->first >= 0) continue;
      lvl.margins.push_back(BigInt(it->second.raw_valuation()) + BigInt(n) * it->first);
    }
    if (!rep.finite && !lvl.margins.empty()) lvl.passes = tail_trend_increasing(lvl.margins);
    rep.levels.push_back(std::move(lvl));
  }
  return rep;
}

using text::parse_long;
using text::split_top;
using text::trim;

LaurentElement parse_laurent(std::string_view literal, const Config& cfg) {
  std::string_view s = trim(literal);
  if (s.rfind("laurent:", 0) != 0) throw std::invalid_argument("series literal must start with laurent:");
  s.remove_prefix(8);
  s = trim(s);
  if (s.empty() || s.front() != '{') throw std::invalid_argument("series literal needs a {k: 'scalar'} map");
  // find the matching brace outside quotes
  std::size_t close = std::string_view::npos;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\'') quoted = !quoted;
    if (!quoted && s[i] == '}') {
      close = i;
      break;
    }
  }
  if (close == std::string_view::npos) throw std::invalid_argument("unterminated series map");

  std::map<long, DensePAdic> coeffs;
  for (auto entry : split_top(s.substr(1, close - 1), ',')) {
    auto colon = entry.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("series entry needs k: 'scalar'");
    long k = parse_long(entry.substr(0, colon));
    auto value = trim(entry.substr(colon + 1));
    if (value.size() < 2 || value.front() != '\'' || value.back() != '\'')
      throw std::invalid_argument("series coefficient must be quoted");
    Scalar c = parse_scalar(value.substr(1, value.size() - 2), cfg);
    coeffs.insert_or_assign(k, c.to_dense(cfg));
  }

  RingTag tag = RingTag::punctured();
  bool tag_given = false;
  std::optional<std::pair<long, long>> window;
  bool truncated = false;
  for (auto opt : split_top(s.substr(close + 1), ';')) {
    if (opt == "truncated") {
      truncated = true;
    } else if (opt.rfind("tag=", 0) == 0) {
      auto t = opt.substr(4);
      tag_given = true;
      if (t == "disk") tag = RingTag::disk();
      else if (t == "punctured") tag = RingTag::punctured();
      else if (t.rfind("annulus:", 0) == 0) tag = RingTag::annulus(parse_long(t.substr(8)));
      else throw std::invalid_argument("unknown ring tag '" + std::string(t) + "'");
    } else if (opt.rfind("window=", 0) == 0) {
      auto w = trim(opt.substr(7));
      if (w.size() < 2 || w.front() != '[' || w.back() != ']') throw std::invalid_argument("window is [lo,hi]");
      auto parts = split_top(w.substr(1, w.size() - 2), ',');
      if (parts.size() != 2) throw std::invalid_argument("window is [lo,hi]");
      window = std::make_pair(parse_long(parts[0]), parse_long(parts[1]));
    } else {
      throw std::invalid_argument("unknown series option '" + std::string(opt) + "'");
    }
  }
  // Without an explicit tag, non-negative support reads as a disk element.
  if (!tag_given && (coeffs.empty() || coeffs.begin()->first >= 0)) tag = RingTag::disk();

  LaurentElement e(cfg, tag);
  for (const auto& [k, c] : coeffs) e.set(k, c);
  if (window) e.set_window(window->first, window->second);
  e.set_truncated(truncated);
  return e;
}

}  // namespace padx
