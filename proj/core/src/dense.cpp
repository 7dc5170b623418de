#include "padx/dense.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace padx {

namespace {

BigInt modulus(unsigned long p, long digits) { return pow_p(p, static_cast<unsigned long>(digits)); }

// Splits a nonzero rational into p^v * unit.
long split_rational(const BigRational& q, unsigned long p, BigRational& unit) {
  BigInt num, den;
  long vn = static_cast<long>(split_unit(q.get_num(), p, num));
  long vd = static_cast<long>(split_unit(q.get_den(), p, den));
  unit = BigRational(num, den);
  unit.canonicalize();
  return vn - vd;
}

BigInt residue_of_unit(const BigRational& u, unsigned long p, long digits) {
  BigInt m = modulus(p, digits);
  return mod_floor(u.get_num() * inverse_mod(u.get_den(), m), m);
}

}  // namespace

DensePAdic DensePAdic::zero(const Config& cfg) { return DensePAdic(cfg); }

DensePAdic DensePAdic::make_exact(const Config& cfg, long v, BigRational unit) {
  DensePAdic r(cfg);
  r.zero_ = false;
  r.valuation_ = v;
  r.precision_ = cfg.precision();
  r.unit_ = residue_of_unit(unit, cfg.prime(), r.precision_);
  r.exact_unit_ = std::move(unit);
  return r;
}

DensePAdic DensePAdic::make_inexact(const Config& cfg, long v, BigInt unit, long prec) {
  if (prec <= 0) throw std::domain_error("precision loss");
  DensePAdic r(cfg);
  r.zero_ = false;
  r.valuation_ = v;
  r.precision_ = std::min(prec, cfg.precision());
  r.unit_ = mod_floor(unit, modulus(cfg.prime(), r.precision_));
  if (r.unit_ % cfg.prime() == 0) throw std::logic_error("unit part divisible by p");
  return r;
}

DensePAdic DensePAdic::from_integer(const Config& cfg, const BigInt& n) { return from_rational(cfg, n, 1); }

DensePAdic DensePAdic::from_rational(const Config& cfg, const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("division by zero");
  return from_rational(cfg, BigRational(num, den));
}

DensePAdic DensePAdic::from_rational(const Config& cfg, const BigRational& q_in) {
  BigRational q = q_in;
  q.canonicalize();
  if (q == 0) return zero(cfg);
  BigRational unit;
  long v = split_rational(q, cfg.prime(), unit);
  return make_exact(cfg, v, std::move(unit));
}

DensePAdic DensePAdic::from_digits(const Config& cfg, long valuation, std::span<const unsigned long> digits) {
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == 0) ++lead;
  if (lead == digits.size()) throw std::domain_error("precision loss");
  BigInt unit = 0;
  BigInt scale = 1;
  for (std::size_t i = lead; i < digits.size(); ++i) {
    if (digits[i] >= cfg.prime()) throw std::invalid_argument("digit out of range for base " + std::to_string(cfg.prime()));
    unit += scale * digits[i];
    scale *= cfg.prime();
  }
  return make_inexact(cfg, valuation + static_cast<long>(lead), unit, static_cast<long>(digits.size() - lead));
}

DensePAdic DensePAdic::power_of_p(const Config& cfg, long e) { return make_exact(cfg, e, BigRational(1)); }

ExtValuation DensePAdic::valuation() const {
  if (zero_) return ExtValuation::infinity();
  return ExtValuation::exact(valuation_);
}

long DensePAdic::raw_valuation() const {
  if (zero_) throw std::domain_error("valuation of zero");
  return valuation_;
}

std::vector<unsigned long> DensePAdic::digits() const {
  std::vector<unsigned long> out;
  if (zero_) return out;
  BigInt u = unit_;
  for (long i = 0; i < precision_; ++i) {
    BigInt d = u % cfg_.prime();
    out.push_back(d.get_ui());
    u /= cfg_.prime();
  }
  return out;
}

BigInt DensePAdic::unit_residue(long ndigits) const {
  if (zero_) throw std::domain_error("unit part of zero");
  if (ndigits <= 0) return 0;
  if (ndigits <= precision_) return mod_floor(unit_, modulus(cfg_.prime(), ndigits));
  if (!exact_unit_) throw std::domain_error("precision loss");
  return residue_of_unit(*exact_unit_, cfg_.prime(), ndigits);
}

std::optional<BigRational> DensePAdic::exact_value() const {
  if (zero_) return BigRational(0);
  if (!exact_unit_) return std::nullopt;
  BigRational q = *exact_unit_;
  BigInt scale = pow_p(cfg_.prime(), static_cast<unsigned long>(valuation_ < 0 ? -valuation_ : valuation_));
  if (valuation_ >= 0) q *= BigRational(scale);
  else q /= BigRational(scale);
  q.canonicalize();
  return q;
}

std::optional<BigInt> DensePAdic::as_integer() const {
  auto q = exact_value();
  if (!q || q->get_den() != 1) return std::nullopt;
  return q->get_num();
}

DensePAdic DensePAdic::operator-() const {
  if (zero_) return *this;
  if (exact_unit_) return make_exact(cfg_, valuation_, -*exact_unit_);
  return make_inexact(cfg_, valuation_, -unit_, precision_);
}

DensePAdic DensePAdic::inverse() const {
  if (zero_) throw std::domain_error("division by zero");
  if (exact_unit_) return make_exact(cfg_, -valuation_, 1 / *exact_unit_);
  return make_inexact(cfg_, -valuation_, inverse_mod(unit_, modulus(cfg_.prime(), precision_)), precision_);
}

DensePAdic operator+(const DensePAdic& a, const DensePAdic& b) {
  if (!(a.cfg_ == b.cfg_)) throw std::invalid_argument("mixed p-adic configurations");
  if (a.zero_) return b;
  if (b.zero_) return a;
  const unsigned long p = a.prime();
  const long m = std::min(a.valuation_, b.valuation_);

  if (a.exact_unit_ && b.exact_unit_) {
    BigRational s = *a.exact_unit_ * BigRational(pow_p(p, a.valuation_ - m)) +
                    *b.exact_unit_ * BigRational(pow_p(p, b.valuation_ - m));
    s.canonicalize();
    if (s == 0) return DensePAdic::zero(a.cfg_);
    BigRational unit;
    long k = split_rational(s, p, unit);
    return DensePAdic::make_exact(a.cfg_, m + k, std::move(unit));
  }

  constexpr long kUnbounded = std::numeric_limits<long>::max();
  const long abs_a = a.exact_unit_ ? kUnbounded : a.valuation_ + a.precision_;
  const long abs_b = b.exact_unit_ ? kUnbounded : b.valuation_ + b.precision_;
  const long abs = std::min(abs_a, abs_b);
  const long span = abs - m;
  if (span <= 0) throw std::domain_error("precision loss");

  const BigInt mod = pow_p(p, span);
  BigInt s = 0;
  for (const DensePAdic* x : {&a, &b}) {
    const long shift = x->valuation_ - m;
    if (shift < span) s += pow_p(p, shift) * x->unit_residue(span - shift);
  }
  s = mod_floor(s, mod);
  if (s == 0) throw std::domain_error("precision loss");
  BigInt unit;
  long k = static_cast<long>(split_unit(s, p, unit));
  return DensePAdic::make_inexact(a.cfg_, m + k, unit, span - k);
}

DensePAdic operator*(const DensePAdic& a, const DensePAdic& b) {
  if (!(a.cfg_ == b.cfg_)) throw std::invalid_argument("mixed p-adic configurations");
  if (a.zero_ || b.zero_) return DensePAdic::zero(a.cfg_);
  const long v = a.valuation_ + b.valuation_;
  if (a.exact_unit_ && b.exact_unit_) return DensePAdic::make_exact(a.cfg_, v, *a.exact_unit_ * *b.exact_unit_);
  long prec = a.cfg_.precision();
  if (!a.exact_unit_) prec = std::min(prec, a.precision_);
  if (!b.exact_unit_) prec = std::min(prec, b.precision_);
  return DensePAdic::make_inexact(a.cfg_, v, a.unit_residue(prec) * b.unit_residue(prec), prec);
}

bool operator==(const DensePAdic& a, const DensePAdic& b) {
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  if (a.valuation_ != b.valuation_) return false;
  if (a.exact_unit_.has_value() != b.exact_unit_.has_value()) return false;
  if (a.exact_unit_) return *a.exact_unit_ == *b.exact_unit_;
  return a.precision_ == b.precision_ && a.unit_ == b.unit_;
}

std::string DensePAdic::literal() const {
  if (zero_) return "int:0";
  if (exact_unit_) {
    if (valuation_ > -4096 && valuation_ < 4096) {
      auto q = *exact_value();
      if (q.get_den() == 1) return "int:" + q.get_num().get_str();
      return "rat:" + q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    return "p^" + std::to_string(valuation_) + "*rat:" + to_string(*exact_unit_);
  }
  std::string s = "digits:v=" + std::to_string(valuation_) + ";[";
  auto ds = digits();
  for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? "," : "") + std::to_string(ds[i]);
  return s + "]";
}

}  // namespace padx
