#include "padx/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace padx {

unsigned long Scalar::prime() const {
  return is_dense() ? dense().prime() : sparse().prime();
}

ExtValuation Scalar::valuation() const { return is_dense() ? dense().valuation() : sparse().valuation(); }

std::optional<BigInt> Scalar::exact_integer() const {
  if (is_dense()) return dense().as_integer();
  const SparsePAdic& s = sparse();
  if (!s.finite()) return std::nullopt;
  for (const auto& k : s.support())
    if (!k.materialized() || k.value() < 0) return std::nullopt;
  return s.partial_sum(s.depth());
}

bool Scalar::is_nonnegative_integer() const {
  auto n = exact_integer();
  return n && *n >= 0;
}

std::optional<std::string> Scalar::construction() const {
  if (is_dense()) return std::nullopt;
  return sparse().construction();
}

DensePAdic Scalar::to_dense(const Config& cfg) const {
  if (is_dense()) return dense();
  const SparsePAdic& s = sparse();
  if (s.is_zero()) return DensePAdic::zero(cfg);
  const BigInt& k1 = s.support().front().value();
  const unsigned long p = cfg.prime();
  if (s.finite() && std::all_of(s.support().begin(), s.support().end(), [](const SupportExponent& k) {
        return k.materialized() && bit_length(k.value()) < 32;
      })) {
    BigRational sum = 0;
    for (const auto& k : s.support()) {
      long e = k.value().get_si();
      sum += e >= 0 ? BigRational(pow_p(p, e)) : BigRational(1, pow_p(p, -e));
    }
    return DensePAdic::from_rational(cfg, sum);
  }
  // Unit digits up to the precision cap, or up to the last tracked exponent.
  long prec = cfg.precision();
  BigInt horizon = k1 + prec;
  if (!s.first_at_or_above(horizon) && !s.finite()) {
    horizon = s.support().back().value() + 1;
    prec = BigInt(horizon - k1).get_si();
  }
  std::vector<unsigned long> digits(static_cast<std::size_t>(prec), 0);
  for (const auto& k : s.support()) {
    if (!k.less_than(horizon)) break;
    digits[BigInt(k.value() - k1).get_ui()] = 1;
  }
  if (!k1.fits_slong_p()) throw std::domain_error("valuation too large for a dense number");
  return DensePAdic::from_digits(cfg, k1.get_si(), digits);
}

std::vector<BigInt> Scalar::partial_sum_indices(const BigInt& limit) const {
  std::vector<BigInt> out;
  if (is_dense()) return out;
  const SparsePAdic& s = sparse();
  for (std::size_t j = 1; j <= s.depth(); ++j) {
    auto m = s.partial_sum(j);
    if (!m || *m > limit) break;
    out.push_back(*m);
  }
  return out;
}

std::string Scalar::literal() const { return is_dense() ? dense().literal() : sparse().literal(); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_int(std::string_view s) {
  s = trim(s);
  std::string str(s);
  if (!str.empty() && str.front() == '+') str.erase(0, 1);
  if (str.empty()) throw std::invalid_argument("empty integer");
  for (std::size_t i = (str.front() == '-') ? 1 : 0; i < str.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(str[i]))) throw std::invalid_argument("bad integer '" + str + "'");
  return BigInt(str, 10);
}

std::vector<std::string_view> split_list(std::string_view body) {
  body = trim(body);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw std::invalid_argument("expected [ ... ] list, got '" + std::string(body) + "'");
  body = trim(body.substr(1, body.size() - 2));
  std::vector<std::string_view> out;
  if (body.empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      out.push_back(trim(body.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Scalar parse_scalar(std::string_view literal, const Config& cfg) {
  std::string_view s = trim(literal);
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("scalar literal needs a kind prefix: '" + std::string(s) + "'");
  std::string_view kind = s.substr(0, colon);
  std::string_view body = s.substr(colon + 1);

  if (kind == "int") return DensePAdic::from_integer(cfg, parse_int(body));
  if (kind == "rat") {
    auto slash = body.find('/');
    if (slash == std::string_view::npos) return DensePAdic::from_integer(cfg, parse_int(body));
    BigInt den = parse_int(body.substr(slash + 1));
    if (den == 0) throw std::domain_error("division by zero");
    return DensePAdic::from_rational(cfg, parse_int(body.substr(0, slash)), den);
  }
  if (kind == "sparse") {
    std::vector<BigInt> ks;
    for (auto item : split_list(body)) ks.push_back(parse_int(item));
    return SparsePAdic::from_support(cfg.prime(), std::move(ks));
  }
  if (kind == "lebras") {
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("lebras literal is lebras:<p>,<depth>");
    BigInt p = parse_int(body.substr(0, comma));
    BigInt depth = parse_int(body.substr(comma + 1));
    if (p != cfg.prime())
      throw std::invalid_argument("literal prime " + p.get_str() + " differs from configured prime " +
                                  std::to_string(cfg.prime()));
    if (depth < 1 || depth > 64) throw std::invalid_argument("lebras depth must be in [1, 64]");
    return SparsePAdic::le_bras(cfg.prime(), depth.get_ui());
  }
  if (kind == "digits") {
    // digits:v=<v>;[d0,...]
    auto semi = body.find(';');
    std::string_view head = trim(body.substr(0, semi));
    if (semi == std::string_view::npos || head.substr(0, 2) != "v=")
      throw std::invalid_argument("digits literal is digits:v=<v>;[d0,d1,...]");
    BigInt v = parse_int(head.substr(2));
    if (!v.fits_slong_p()) throw std::invalid_argument("digits valuation out of range");
    std::vector<unsigned long> ds;
    for (auto item : split_list(body.substr(semi + 1))) {
      BigInt d = parse_int(item);
      if (d < 0 || d >= cfg.prime()) throw std::invalid_argument("digit out of range: " + d.get_str());
      ds.push_back(d.get_ui());
    }
    return DensePAdic::from_digits(cfg, v.get_si(), ds);
  }
  throw std::invalid_argument("unknown scalar kind '" + std::string(kind) + "'");
}

DifferenceValuator::DifferenceValuator(const Scalar& lambda, BigInt cap)
    : p_(lambda.prime()), cap_(std::move(cap)), mode_(Mode::ExactRational) {
  if (cap_ < 1) throw std::invalid_argument("valuation cap must be >= 1");
  if (lambda.is_dense()) {
    const DensePAdic& d = lambda.dense();
    if (auto q = d.exact_value()) {
      num_ = q->get_num();
      den_ = q->get_den();
      den_val_ = static_cast<long>(valuation_of(den_, p_));
      return;
    }
    const long v = d.raw_valuation();
    if (v < 0) {
      mode_ = Mode::Constant;
      constant_ = ExtValuation::exact(v);
      return;
    }
    mode_ = Mode::Residue;
    effective_cap_ = std::min(cap_, BigInt(v + d.known_precision()));
    const long unit_digits = BigInt(effective_cap_ - v).get_si();
    residue_ = unit_digits > 0 ? pow_p(p_, v) * d.unit_residue(unit_digits) : BigInt(0);
    modulus_ = pow_p(p_, effective_cap_.get_ui());
    return;
  }

  const SparsePAdic& s = lambda.sparse();
  if (s.is_zero()) {
    num_ = 0;
    den_ = 1;
    return;
  }
  const SupportExponent& lead = s.support().front();
  if (lead.materialized() && lead.value() < 0) {
    mode_ = Mode::Constant;
    constant_ = ExtValuation::exact(lead.value());
    return;
  }
  mode_ = Mode::Sparse;
  finite_ = s.finite();
  effective_cap_ = cap_;
  auto hi = s.first_at_or_above(cap_);
  if (!hi && !s.finite()) effective_cap_ = s.support().back().value() + 1;
  if (hi) next_ = s.support()[*hi];
  // residue over the tracked exponents below the effective cap
  residue_ = 0;
  for (const auto& k : s.support()) {
    if (!k.less_than(effective_cap_)) break;
    if (bit_length(k.value()) > 40 || k.value().get_ui() * bit_length(BigInt(p_)) > kResidueBits)
      throw std::domain_error("cap exceeded");
    residue_ += pow_p(p_, k.value().get_ui());
  }
}

ExtValuation DifferenceValuator::operator()(const BigInt& j) const {
  switch (mode_) {
    case Mode::Constant:
      return constant_;
    case Mode::ExactRational: {
      BigInt n = num_ - j * den_;
      if (n == 0) return ExtValuation::infinity();
      BigInt v = BigInt(static_cast<long>(valuation_of(n, p_))) - den_val_;
      if (v >= cap_) return ExtValuation::lower_bound(cap_);
      return ExtValuation::exact(v);
    }
    case Mode::Residue: {
      BigInt d = mod_floor(residue_ - j, modulus_);
      if (d == 0) return ExtValuation::lower_bound(effective_cap_);
      return ExtValuation::exact(static_cast<long>(valuation_of(d, p_)));
    }
    case Mode::Sparse: {
      BigInt d = residue_ - j;
      if (d != 0) {
        BigInt e = static_cast<unsigned long>(valuation_of(d, p_));
        if (e < effective_cap_) return ExtValuation::exact(e);
        if (next_) {
          if (!next_->materialized()) return ExtValuation::exact(e);
          if (next_->value() != e) return ExtValuation::exact(std::min(e, next_->value()));
          return ExtValuation::lower_bound(e);
        }
        if (finite_) return ExtValuation::exact(e);
        return ExtValuation::lower_bound(effective_cap_);
      }
      if (next_) {
        if (next_->materialized()) return ExtValuation::exact(next_->value());
        return ExtValuation::lower_bound(effective_cap_);
      }
      if (finite_) return ExtValuation::infinity();
      return ExtValuation::lower_bound(effective_cap_);
    }
  }
  return ExtValuation::infinity();
}

ExtValuation valuation_of_difference(const Scalar& lambda, const BigInt& j, const BigInt& cap) {
  return DifferenceValuator(lambda, cap)(j);
}

}  // namespace padx
