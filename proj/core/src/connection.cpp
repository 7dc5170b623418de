#include "padx/connection.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace padx {

// ---- N_lambda ---------------------------------------------------------------

NLambdaElement NLambdaElement::generator(const Scalar& lambda, const Config& cfg) {
  return monomial(lambda, DensePAdic::from_integer(cfg, 1), 0);
}

NLambdaElement NLambdaElement::monomial(const Scalar& lambda, const DensePAdic& c, long k) {
  NLambdaElement v(lambda, c.config());
  v.set(k, c);
  return v;
}

DensePAdic NLambdaElement::coefficient(long k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? DensePAdic::zero(cfg_) : it->second;
}

void NLambdaElement::set(long k, const DensePAdic& c) {
  if (c.is_zero()) coeffs_.erase(k);
  else coeffs_.insert_or_assign(k, c);
}

void NLambdaElement::add(long k, const DensePAdic& c) { set(k, coefficient(k) + c); }

LaurentElement NLambdaElement::series() const {
  LaurentElement out(cfg_, RingTag::punctured());
  for (const auto& [k, c] : coeffs_) out.set(k, c);
  return out;
}

bool operator==(const NLambdaElement& a, const NLambdaElement& b) {
  return a.lambda_.literal() == b.lambda_.literal() && a.coeffs_ == b.coeffs_;
}

std::string NLambdaElement::literal() const {
  std::string s = "(";
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) s += " + ";
    s += c.literal() + "*x^" + std::to_string(k);
    first = false;
  }
  if (first) s += "0";
  return s + ")*x^lambda[" + lambda_.literal() + "]";
}

NLambdaElement n_derive(const NLambdaElement& v) {
  const DensePAdic lam = v.lambda().to_dense(v.config());
  NLambdaElement out(v.lambda(), v.config());
  for (const auto& [k, c] : v.terms()) out.add(k - 1, c * (lam + DensePAdic::from_integer(v.config(), k)));
  return out;
}

NLambdaElement n_apply(const OperatorElement& p, const NLambdaElement& v) {
  NLambdaElement out(v.lambda(), v.config());
  NLambdaElement d = v;
  for (long i = 0; i <= p.order(); ++i) {
    if (i > 0) d = n_derive(d);
    const LaurentElement& g = p.coefficients()[static_cast<std::size_t>(i)];
    for (const auto& [a, ga] : g.terms())
      for (const auto& [k, c] : d.terms()) out.add(a + k, ga * c);
  }
  return out;
}

MLambdaElement make_m_lambda(const Scalar& lambda, LaurentElement series, long n_max) {
  if (series.tag().kind == RingTag::Kind::Disk) series = series.with_tag(RingTag::punctured());
  MembershipReport rep = membership_in_O_U(series, n_max);
  return {lambda, std::move(series), std::move(rep)};
}

// ---- b-function data --------------------------------------------------------

BFunctionData BFunctionData::from_roots(std::vector<Root> roots, OperatorBound bound) {
  for (const auto& r : roots) {
    if (r.multiplicity < 1) throw std::invalid_argument("root multiplicity must be positive");
    if (r.value.is_nonnegative_integer())
      throw std::invalid_argument("b vanishes at the non-negative integer " + r.value.literal());
  }
  BFunctionData d;
  d.roots = std::move(roots);
  d.bound = bound;
  return d;
}

BFunctionData bfunction_rank_one(const Scalar& lambda, const Config& cfg) {
  BFunctionData d;
  d.lambda = lambda;
  d.bound = {0, 1};
  if (lambda.is_nonnegative_integer()) {
    const BigInt shift = *lambda.exact_integer() + 1;
    d.generator_shift = shift;
    d.roots.push_back({Scalar(DensePAdic::from_integer(cfg, -1)), 1});
  } else {
    d.roots.push_back({lambda, 1});
  }
  return d;
}

// ---- sufficient radius ----------------------------------------------------------

namespace {

BigInt ceil_div(const BigInt& a, long b) {
  BigInt q;
  mpz_cdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
  return q;
}

}  // namespace

SufficientR sufficient_r(const BFunctionData& data, long n, long j_max, const ClassifierOptions& options) {
  if (j_max < 1) throw std::invalid_argument("j_max must be positive");
  SufficientR out;
  out.level = n;
  out.j_max = j_max;
  out.box = options;
  out.r_prime = data.bound.at_level(n);

  long witness = 0;
  for (std::size_t t = 0; t < data.roots.size(); ++t) {
    TypeVerdict v = classify_positive_type(data.roots[t].value, options);
    const bool ok = v.positive();
    if (v.category == TypeVerdict::Category::PositiveWitness) witness = std::max(witness, v.r);
    out.root_verdicts.push_back(std::move(v));
    if (!ok && !out.failing_root) out.failing_root = t;
  }
  if (out.failing_root) return out;

  // S_j = sum_t mult_t V_j(lambda_t)
  std::vector<BigInt> sums(static_cast<std::size_t>(j_max), 0);
  for (const auto& root : data.roots) {
    ProductProfile prof = product_profile(root.value, j_max, options.cap);
    for (long j = 1; j <= j_max; ++j) {
      const ExtValuation& v = prof.at(j);
      if (v.is_infinite()) throw std::invalid_argument("b vanishes at a non-negative integer");
      if (!v.is_exact())
        throw std::runtime_error("cap exceeded: v(prod_{s<" + std::to_string(j) + "}(s - root)) is only known to be " +
                                 v.to_string());
      sums[static_cast<std::size_t>(j - 1)] += root.multiplicity * v.value();
    }
  }

  BigInt r2 = witness;
  for (long j = 1; j <= j_max; ++j) r2 = std::max(r2, ceil_div(sums[static_cast<std::size_t>(j - 1)], j));
  if (!r2.fits_slong_p()) throw std::runtime_error("cap exceeded: radius exponent does not fit");
  out.r_double_prime = r2.get_si();
  const long r = std::max(0L, *out.r_double_prime - out.r_prime);
  out.r = r;

  out.validated = true;
  for (long j = 1; j <= j_max; ++j) {
    BigInt e = BigInt(j) * r + BigInt(j) * out.r_prime - sums[static_cast<std::size_t>(j - 1)];
    out.validated = out.validated && e >= 0;
    out.validation.push_back(std::move(e));
  }
  return out;
}

// ---- theta preimage -------------------------------------------------------------

namespace {

void check_no_integer_hit(const Scalar& lambda, long s_max) {
  auto n = lambda.exact_integer();
  if (n && *n >= 0 && *n < s_max) throw std::domain_error("lambda hits integer " + to_decimal(*n));
}

}  // namespace

ThetaPreimage theta_preimage(const Scalar& lambda, const LaurentElement& target, long n_max) {
  const Config& cfg = target.config();
  for (const auto& [k, c] : target.terms())
    if (k > 0) throw std::invalid_argument("target must be supported in non-positive powers");
  const long s_max = target.terms().empty() ? 0 : -target.terms().begin()->first;
  check_no_integer_hit(lambda, s_max);

  const DensePAdic lam = lambda.to_dense(cfg);
  std::vector<DensePAdic> g(static_cast<std::size_t>(s_max + 1), DensePAdic::zero(cfg));
  DensePAdic prod = DensePAdic::from_integer(cfg, 1);  // prod_{j<s}(lambda - j)
  for (long s = 0; s <= s_max; ++s) {
    if (s > 0) {
      DensePAdic f = lam - DensePAdic::from_integer(cfg, s - 1);
      if (f.is_zero()) throw std::domain_error("lambda hits integer " + std::to_string(s - 1));
      prod = prod * f;
    }
    const DensePAdic c = target.coefficient(-s);
    if (!c.is_zero()) g[static_cast<std::size_t>(s)] = c / prod;
  }
  ThetaPreimage out{OperatorElement::constant_coefficient(cfg, g, target.truncated()), std::nullopt};
  try {
    out.membership = dhat_membership(out.op, n_max);
  } catch (const std::invalid_argument&) {
    // too few terms to judge a truncated tail
  }
  return out;
}

std::vector<std::optional<BigInt>> theta_preimage_exponents(const Scalar& lambda,
                                                            std::span<const std::pair<long, BigInt>> target,
                                                            const BigInt& cap) {
  std::vector<long> idx;
  for (const auto& [s, e] : target) idx.push_back(s);
  std::vector<long> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<ExtValuation> v = product_valuations_at(lambda, sorted, cap);
  std::vector<std::optional<BigInt>> out;
  for (const auto& [s, e] : target) {
    auto pos = std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    const ExtValuation& vs = v[static_cast<std::size_t>(pos)];
    out.push_back(vs.is_exact() ? std::optional<BigInt>(e - vs.value()) : std::nullopt);
  }
  return out;
}

// ---- constant reduction ------------------------------------------------------------

ConstantReduction constant_reduction(const OperatorElement& p, const Scalar& lambda, long t_max) {
  const Config& cfg = p.config();
  ExtValuation vl = lambda.valuation();
  if (vl.is_exact() && vl.value() < 0) throw std::invalid_argument("constant reduction needs v(lambda) >= 0");
  const DensePAdic lam = lambda.to_dense(cfg);

  ConstantReduction out{{}, {}, OperatorElement(cfg)};
  for (long t = 0; t <= t_max; ++t) {
    DensePAdic h = DensePAdic::zero(cfg);
    ExtValuation bound = ExtValuation::infinity();
    DensePAdic falling = DensePAdic::from_integer(cfg, 1);  // (lambda-t)...(lambda-j+1)
    for (long j = t; j <= p.order(); ++j) {
      if (j > t) falling = falling * (lam - DensePAdic::from_integer(cfg, j - 1));
      const DensePAdic g = p.coefficients()[static_cast<std::size_t>(j)].coefficient(j - t);
      if (g.is_zero()) continue;
      h = h + g * falling;
      bound = min(bound, g.valuation());
    }
    out.h.push_back(h);
    out.bound.push_back(bound);
  }
  out.op = OperatorElement::constant_coefficient(cfg, out.h, p.truncated());
  return out;
}

// ---- divergence witness -----------------------------------------------------------

std::string verdict_name(WitnessReport::Verdict v) {
  return v == WitnessReport::Verdict::DivergenceWitnessed ? "DivergenceWitnessed" : "NoWitnessInBox";
}

WitnessReport divergence_witness(const Scalar& lambda, const Config& cfg, long r_max, long i_max, const BigInt& cap) {
  if (r_max < 1 || i_max < 1) throw std::invalid_argument("r_max and i_max must be positive");
  WitnessReport rep;
  rep.r_max = r_max;
  rep.i_max = i_max;
  rep.cap = cap;

  std::set<long> cand;
  for (long i = 1; i <= i_max; ++i) cand.insert(i);
  for (const BigInt& m : lambda.partial_sum_indices(BigInt(1) << 22))
    for (long t = 0; t <= r_max; ++t) cand.insert(m.get_si() + 1 + t);
  const std::vector<long> idx(cand.begin(), cand.end());
  const std::vector<ExtValuation> V = product_valuations_at(lambda, idx, cap);

  long j_prev = 0;
  long i_prev = 0;
  std::size_t pos = 0;
  for (long r = 1; r <= r_max; ++r) {
    // smallest j with r j > (r-1) j_{r-1}
    const long j = (r - 1) * j_prev / r + 1;
    const BigInt eps = BigInt(r) * j;
    std::optional<WitnessStep> step;
    for (; pos < idx.size() && !step; ++pos) {
      const long i = idx[pos];
      if (i <= std::max(j, i_prev) || !V[pos].is_exact()) continue;
      BigInt margin = BigInt(2 * r) * i - V[pos].value();
      if (margin >= eps) continue;
      BigInt coeff = BigInt(2 * i - j) * r;
      step = WitnessStep{r, j, eps, BigInt(i), V[pos].value(), margin, coeff, coeff - V[pos].value()};
      i_prev = i;
    }
    if (!step) {
      rep.reason = "no index i in the box satisfies the chain condition at r = " + std::to_string(r);
      return rep;
    }
    rep.steps.push_back(std::move(*step));
    j_prev = j;
  }

  LaurentElement m(cfg, RingTag::punctured());
  for (const auto& s : rep.steps) m.set(-s.i.get_si(), DensePAdic::power_of_p(cfg, s.coefficient_exponent.get_si()));
  m.set_truncated(true);
  rep.membership = membership_in_O_U(m, r_max);
  rep.m = std::move(m);

  const bool g_ok = std::all_of(rep.steps.begin(), rep.steps.end(), [](const WitnessStep& s) { return s.g_exponent < 0; });
  if (!g_ok) {
    rep.reason = "some preimage coefficient has norm at most 1";
  } else if (!rep.membership.all_pass()) {
    rep.reason = "the assembled element fails the membership trend";
  } else {
    rep.verdict = WitnessReport::Verdict::DivergenceWitnessed;
  }
  return rep;
}

std::string verify_witness(const WitnessReport& report, const Scalar& lambda) {
  if (!report.witnessed()) return "report carries no witness";
  if (static_cast<long>(report.steps.size()) != report.r_max) return "chain length differs from r_max";
  DifferenceValuator val(lambda, report.cap);
  long j_prev = 0;
  BigInt i_prev = 0;
  BigInt j_cursor = 0;
  ExtValuation acc = ExtValuation::exact(0);
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    const WitnessStep& s = report.steps[k];
    const std::string at = " at r = " + std::to_string(s.r);
    if (s.r != static_cast<long>(k) + 1) return "step order" + at;
    if (!(BigInt(s.r) * s.j > BigInt(s.r - 1) * j_prev)) return "eps_r does not decrease" + at;
    if (s.eps_exponent != BigInt(s.r) * s.j) return "eps exponent" + at;
    if (!(s.i > std::max(BigInt(s.j), i_prev))) return "i_r not beyond max(j_r, i_{r-1})" + at;
    // V_i by direct summation
    for (; j_cursor < s.i; ++j_cursor) acc = acc + val(j_cursor);
    if (!acc.is_exact() || acc.value() != s.product_valuation) return "product valuation" + at;
    const BigInt margin = BigInt(2 * s.r) * s.i - acc.value();
    if (margin != s.margin || !(margin < s.eps_exponent)) return "chain inequality" + at;
    const BigInt coeff = (2 * s.i - s.j) * s.r;
    if (coeff != s.coefficient_exponent) return "coefficient exponent" + at;
    if (coeff - acc.value() != s.g_exponent || !(s.g_exponent < 0)) return "g exponent" + at;
    if (report.m) {
      ExtValuation cv = report.m->coefficient(-s.i.get_si()).valuation();
      if (!cv.is_exact() || cv.value() != coeff) return "stored coefficient of m" + at;
    }
    j_prev = s.j;
    i_prev = s.i;
  }
  if (!report.membership.all_pass()) return "membership trend";
  return {};
}

// ---- probe ---------------------------------------------------------------------------

std::string probe_kind_name(ProbeVerdict::Kind k) {
  switch (k) {
    case ProbeVerdict::Kind::CoadmissibleEvidence: return "CoadmissibleEvidence";
    case ProbeVerdict::Kind::DivergenceWitnessed: return "DivergenceWitnessed";
    case ProbeVerdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ProbeVerdict coadmissibility_probe(const Scalar& lambda, const Config& cfg, const ProbeOptions& options) {
  ProbeVerdict out;
  out.box = options;
  out.classification = classify_positive_type(lambda, options.classifier);

  bool coadmissible = false;
  std::string note;
  try {
    out.bfunction = bfunction_rank_one(lambda, cfg);
    coadmissible = true;
    for (long n = 0; n <= options.n_max && coadmissible; ++n) {
      SufficientR s = sufficient_r(*out.bfunction, n, options.j_max, options.classifier);
      coadmissible = s.r.has_value() && s.validated;
      out.levels.push_back(std::move(s));
    }
    if (!coadmissible) note = "no sufficient radius: a root has no positive-type witness in the box";
  } catch (const std::runtime_error& e) {
    note = e.what();
  }

  out.witness = divergence_witness(lambda, cfg, options.witness_r_max, options.witness_i_max, options.classifier.cap);
  const bool divergent = out.witness.witnessed();

  if (coadmissible && divergent) {
    out.conflict = true;
    out.reason = "both a sufficient radius and a divergence witness were found";
  } else if (coadmissible) {
    out.kind = ProbeVerdict::Kind::CoadmissibleEvidence;
  } else if (divergent) {
    out.kind = ProbeVerdict::Kind::DivergenceWitnessed;
  } else {
    out.reason = note.empty() ? out.witness.reason : note + "; " + out.witness.reason;
  }
  return out;
}

}  // namespace padx
