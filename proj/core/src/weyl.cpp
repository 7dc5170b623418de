#include "padx/weyl.hpp"

#include <algorithm>
#include <stdexcept>

#include "padx/evidence.hpp"
#include "text_util.hpp"

namespace padx {

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

OperatorElement OperatorElement::constant_coefficient(const Config& cfg, const std::vector<DensePAdic>& g, bool truncated) {
  OperatorElement op(cfg);
  for (std::size_t i = 0; i < g.size(); ++i) op.set(static_cast<long>(i), LaurentElement::constant(g[i]));
  op.truncated_ = truncated;
  return op;
}

OperatorElement OperatorElement::identity(const Config& cfg) {
  return constant_coefficient(cfg, {DensePAdic::from_integer(cfg, 1)});
}

OperatorElement OperatorElement::derivation_power(const Config& cfg, long i) {
  OperatorElement op(cfg);
  op.set(i, LaurentElement::constant(DensePAdic::from_integer(cfg, 1)));
  return op;
}

OperatorElement OperatorElement::multiplication(const LaurentElement& g) {
  OperatorElement op(g.config());
  op.set(0, g);
  return op;
}

LaurentElement OperatorElement::coefficient(long i) const {
  if (i < 0 || i > order()) return LaurentElement(cfg_);
  return coeffs_[static_cast<std::size_t>(i)];
}

void OperatorElement::set(long i, const LaurentElement& g) {
  if (i < 0) throw std::invalid_argument("negative operator order");
  LaurentElement disk = g.tag().kind == RingTag::Kind::Disk ? g : g.with_tag(RingTag::disk());
  while (static_cast<long>(coeffs_.size()) <= i) coeffs_.emplace_back(cfg_);
  coeffs_[static_cast<std::size_t>(i)] = std::move(disk);
  trim();
}

void OperatorElement::trim() {
  while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool OperatorElement::is_constant_coefficient() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const LaurentElement& g) {
    return g.is_zero() || (g.terms().size() == 1 && g.terms().begin()->first == 0);
  });
}

bool operator==(const OperatorElement& a, const OperatorElement& b) {
  const long n = std::max(a.order(), b.order());
  for (long i = 0; i <= n; ++i)
    if (!(a.coefficient(i) == b.coefficient(i))) return false;
  return true;
}

std::string OperatorElement::literal() const {
  std::string s = "op:[";
  bool first = true;
  for (long i = 0; i <= order(); ++i) {
    const auto& g = coeffs_[static_cast<std::size_t>(i)];
    if (g.is_zero()) continue;
    s += (first ? "(" : ", (") + std::to_string(i) + ", " + g.literal() + ")";
    first = false;
  }
  s += "]";
  if (truncated_) s += ";truncated";
  return s;
}

OperatorElement op_add(const OperatorElement& a, const OperatorElement& b) {
  OperatorElement r(a.config());
  const long n = std::max(a.order(), b.order());
  for (long i = 0; i <= n; ++i) r.set(i, l_add(a.coefficient(i), b.coefficient(i)));
  r.set_truncated(a.truncated() || b.truncated());
  return r;
}

OperatorElement op_sub(const OperatorElement& a, const OperatorElement& b) {
  OperatorElement r(a.config());
  const long n = std::max(a.order(), b.order());
  for (long i = 0; i <= n; ++i) r.set(i, l_sub(a.coefficient(i), b.coefficient(i)));
  r.set_truncated(a.truncated() || b.truncated());
  return r;
}

OperatorElement op_compose(const OperatorElement& p, const OperatorElement& q, const OperatorPolicy& policy) {
  const Config& cfg = p.config();
  std::vector<LaurentElement> out;
  bool clipped = false;
  auto accumulate = [&](long order, const LaurentElement& term) {
    if (order > policy.order_cap) {
      if (!policy.clip) throw std::length_error("order overflow: composition exceeds order cap " + std::to_string(policy.order_cap));
      clipped = true;
      return;
    }
    while (static_cast<long>(out.size()) <= order) out.emplace_back(cfg);
    auto& slot = out[static_cast<std::size_t>(order)];
    slot = l_add(slot, term, policy.window);
  };

  for (long j = 0; j <= q.order(); ++j) {
    const LaurentElement& h = q.coefficients()[static_cast<std::size_t>(j)];
    if (h.is_zero()) continue;
    // h, h', h'', ... up to the order of p
    std::vector<LaurentElement> derivs{h};
    for (long k = 1; k <= p.order(); ++k) derivs.push_back(l_derive(derivs.back()));
    for (long i = 0; i <= p.order(); ++i) {
      const LaurentElement& g = p.coefficients()[static_cast<std::size_t>(i)];
      if (g.is_zero()) continue;
      for (long k = 0; k <= i; ++k) {
        const LaurentElement& hk = derivs[static_cast<std::size_t>(k)];
        if (hk.is_zero()) continue;
        LaurentElement term = l_scale(l_mul(g, hk, policy.window), DensePAdic::from_integer(cfg, binomial(i, k)));
        accumulate(i - k + j, term);
      }
    }
  }
  OperatorElement r(cfg);
  for (std::size_t i = 0; i < out.size(); ++i) r.set(static_cast<long>(i), out[i]);
  r.set_truncated(p.truncated() || q.truncated() || clipped);
  return r;
}

LaurentElement op_apply(const OperatorElement& p, const LaurentElement& a, const WindowPolicy& policy) {
  LaurentElement acc(a.config(), a.tag());
  acc.set_window(a.low(), a.high());
  LaurentElement deriv = a;
  for (long i = 0; i <= p.order(); ++i) {
    if (i > 0) deriv = l_derive(deriv);
    const LaurentElement& g = p.coefficients()[static_cast<std::size_t>(i)];
    if (!g.is_zero()) acc = l_add(acc, l_mul(g, deriv, policy), policy);
  }
  acc.set_truncated(a.truncated() || p.truncated() || acc.truncated());
  return acc;
}

LevelNorm level_norm(const OperatorElement& p, long n) {
  LevelNorm out{n, ExtValuation::infinity()};
  for (long i = 0; i <= p.order(); ++i)
    out.exponent = min(out.exponent, p.coefficients()[static_cast<std::size_t>(i)].gauss_valuation() - BigInt(n * i));
  return out;
}

bool DHatMembershipReport::all_pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const Level& l) { return l.passes; });
}

long DHatMembershipReport::passes_through() const {
  long n = -1;
  for (const auto& l : levels) {
    if (!l.passes) break;
    n = l.level;
  }
  return n;
}

DHatMembershipReport dhat_membership(const OperatorElement& p, long n_max) {
  DHatMembershipReport rep;
  rep.finite = !p.truncated();
  std::vector<std::pair<long, BigInt>> terms;
  for (long i = 0; i <= p.order(); ++i) {
    ExtValuation v = p.coefficients()[static_cast<std::size_t>(i)].gauss_valuation();
    if (v.is_exact()) terms.emplace_back(i, v.value());
  }
  if (!rep.finite && terms.size() < 8)
    throw std::invalid_argument("tail too short: " + std::to_string(terms.size()) + " materialized terms, need 8");
  for (long n = 0; n <= n_max; ++n) {
    DHatMembershipReport::Level lvl{n, {}, true};
    for (const auto& [i, v] : terms) lvl.margins.push_back(v - BigInt(n * i));
    if (!rep.finite) lvl.passes = tail_trend_increasing(lvl.margins);
    rep.levels.push_back(std::move(lvl));
  }
  return rep;
}

OperatorElement parse_operator(std::string_view literal, const Config& cfg) {
  using text::trim;
  std::string_view s = trim(literal);
  if (s.rfind("op:", 0) != 0) throw std::invalid_argument("operator literal must start with op:");
  s.remove_prefix(3);
  auto parts = text::split_top(s, ';');
  if (parts.empty()) throw std::invalid_argument("empty operator literal");
  std::string_view list = parts[0];
  if (list.size() < 2 || list.front() != '[' || list.back() != ']') throw std::invalid_argument("operator literal is op:[(i, series), ...]");
  OperatorElement op(cfg);
  for (auto pair : text::split_top(list.substr(1, list.size() - 2), ',')) {
    if (pair.size() < 2 || pair.front() != '(' || pair.back() != ')') throw std::invalid_argument("operator term is (i, series)");
    auto inner = pair.substr(1, pair.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("operator term is (i, series)");
    long i = text::parse_long(inner.substr(0, comma));
    op.set(i, l_add(op.coefficient(i), parse_laurent(trim(inner.substr(comma + 1)), cfg)));
  }
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k] == "truncated") op.set_truncated(true);
    else throw std::invalid_argument("unknown operator option '" + std::string(parts[k]) + "'");
  }
  return op;
}

}  // namespace padx
