#include "padx/acceptance.hpp"

#include <random>
#include <sstream>

#include "padx/connection.hpp"
#include "padx/evidence.hpp"
#include "padx/type_classifier.hpp"
#include "padx/weyl.hpp"

namespace padx::acceptance {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  unsigned long prime() {
    static constexpr unsigned long ps[] = {2, 3, 5};
    return ps[uniform(0, 2)];
  }
  /// a/b with |a| <= num, 1 <= b <= den, avoiding {0, ..., avoid}.
  BigRational rational(long num, long den, long avoid) {
    for (;;) {
      BigRational q(uniform(-num, num), uniform(1, den));
      q.canonicalize();
      if (q.get_den() == 1 && q >= 0 && q <= avoid) continue;
      return q;
    }
  }

 private:
  std::mt19937_64 gen_;
};

struct Failures {
  std::ostringstream log;
  long count = 0;
  long checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (count < 5) log << (count ? "; " : "") << what;
    ++count;
  }
  CriterionResult result(int id, std::string name) const {
    std::string detail = std::to_string(checks) + " checks";
    if (count) detail += ", " + std::to_string(count) + " failed: " + log.str();
    return {id, std::move(name), count == 0, std::move(detail)};
  }
};

template <class F>
void guarded(Failures& f, const std::string& what, F body) {
  try {
    body();
  } catch (const std::exception& e) {
    f.expect(false, what + " threw: " + e.what());
  }
}

// v_p of a nonzero integer, by repeated division.
BigInt vp(unsigned long p, BigInt n) {
  if (n < 0) n = -n;
  BigInt v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

BigInt power(unsigned long p, unsigned long e) {
  BigInt r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= p;
  return r;
}

/// Le Bras exponents k_1 = p, k_{n+1} = p^{2 k_n} rebuilt from scratch, as
/// far as they fit: v(lambda - j) = v_p(M - j) for j != M, where M is the
/// last partial sum below the first unbuilt exponent K.
struct LeBrasOracle {
  unsigned long p;
  BigInt M;
  std::optional<BigInt> K;  // empty when too large to build (never reached)

  explicit LeBrasOracle(unsigned long prime) : p(prime) {
    std::vector<BigInt> k{BigInt(p)};
    while (k.size() < 3) {
      const BigInt& last = k.back();
      if (last > 4096) break;
      k.push_back(power(p, 2 * last.get_ui()));
    }
    // partial sums p^{k_1} + ... with every p^{k_i} buildable
    M = 0;
    std::size_t used = 0;
    for (; used < k.size() && k[used] <= 4096; ++used) M += power(p, k[used].get_ui());
    if (used < k.size()) K = k[used];
  }

  BigInt v(const BigInt& j) const {
    if (j == M) return *K;
    return vp(p, M - j);
  }
};

}  // namespace

CriterionResult lebras_valuations() {
  Failures f;
  guarded(f, "le bras p=2", [&] {
    const SparsePAdic lb = SparsePAdic::le_bras(2, 4);
    const BigInt k2 = power(2, 4), k3 = power(2, 32);
    const BigInt m1 = power(2, 2), m2 = m1 + power(2, 16);
    f.expect(lb.sub_partial_sum(1).valuation() == ExtValuation::exact(k2), "v(lambda - m_1) != 16");
    f.expect(lb.sub_partial_sum(2).valuation() == ExtValuation::exact(k3), "v(lambda - m_2) != 2^32");
    std::vector<long> rs;
    for (long r = 0; r <= 8; ++r) rs.push_back(r);
    DivergenceTable t = lebras_divergence_check(lb, rs, 2);
    f.expect(t.rows.size() == rs.size() * 2, "table size");
    for (const auto& row : t.rows) {
      const BigInt expected = row.j == 1 ? BigInt(row.r * m1 - k2) : BigInt(row.r * m2 - k3);
      f.expect(row.exponent == expected, "exponent r=" + std::to_string(row.r) + " j=" + std::to_string(row.j));
    }
    for (long r : rs) f.expect(r * m2 - k3 < r * m1 - k2, "oracle decrease r=" + std::to_string(r));
    f.expect(t.all_decreasing(), "table not strictly decreasing");
  });
  return f.result(1, "Le Bras valuations and divergence exponents");
}

CriterionResult positive_type_facts(std::uint64_t seed) {
  Failures f;
  Rng rng(seed);
  const ClassifierOptions opt;
  // (i) |lambda| > 1
  for (int s = 0; s < 20; ++s) {
    const unsigned long p = rng.prime();
    const long k = rng.uniform(1, 3);
    long u = 0;
    while (u == 0 || u % static_cast<long>(p) == 0) u = rng.uniform(-200, 200);
    const std::string tag = std::to_string(u) + "/" + std::to_string(p) + "^" + std::to_string(k);
    guarded(f, tag, [&] {
      Config cfg(p, 64);
      Scalar lam(DensePAdic::from_rational(cfg, BigInt(u), power(p, static_cast<unsigned long>(k))));
      TypeVerdict v = classify_positive_type(lam, opt);
      f.expect(v.category == TypeVerdict::Category::PositiveWitness && v.r <= k, tag + " verdict");
      ProductProfile prof = product_profile(lam, opt.horizon, opt.cap);
      bool linear = true;
      for (long i = 1; i <= opt.horizon; ++i) linear = linear && prof.at(i) == ExtValuation::exact(BigInt(-k * i));
      f.expect(linear, tag + " V_i != i v(lambda)");
      f.expect(tail_window_passes(product_margins(prof, k), opt.threshold), tag + " rule fails at r = -v");
    });
  }
  // (ii) integers
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Config cfg(p, 64);
    for (long n = -5; n <= 20; ++n) {
      const std::string tag = "int " + std::to_string(n) + " p=" + std::to_string(p);
      guarded(f, tag, [&] {
        TypeVerdict v = classify_positive_type(Scalar(DensePAdic::from_integer(cfg, n)), opt);
        const bool ok = n >= 0 ? v.category == TypeVerdict::Category::PositiveInteger
                               : v.category == TypeVerdict::Category::PositiveWitness;
        f.expect(ok, tag);
      });
    }
  }
  // (iii) shift invariance
  std::vector<std::pair<Config, Scalar>> sample;
  for (int s = 0; s < 28; ++s) {
    Config cfg(rng.prime(), 64);
    sample.emplace_back(cfg, Scalar(DensePAdic::from_rational(cfg, rng.rational(30, 12, -1))));
  }
  for (const char* lit : {"lebras:2,4", "lebras:2,3"}) {
    Config cfg(2, 64);
    sample.emplace_back(cfg, parse_scalar(lit, cfg));
  }
  for (const auto& [cfg, lam] : sample) {
    guarded(f, lam.literal(), [&] {
      const bool base = classify_positive_type(lam, opt).positive();
      for (long n = -4; n <= 4; ++n) {
        const bool shifted = classify_positive_type(shift(lam, n, opt.cap, cfg), opt).positive();
        f.expect(shifted == base, lam.literal() + " shifted by " + std::to_string(n));
      }
    });
  }
  return f.result(2, "Positive-type facts");
}

CriterionResult kedlaya_identity(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 3);
  const long order = 25;
  for (int s = 0; s < 20; ++s) {
    const BigRational lam = rng.rational(60, 16, order);
    guarded(f, to_string(lam), [&] {
      IdentityCheck c = kedlaya_identity_check(lam, order);
      BigRational denom = lam;
      for (long n = 0; n <= order; ++n) {
        if (n > 0) denom *= BigRational(n) - lam;
        BigRational lhs = 1 / denom;
        BigRational rhs = 0;
        BigInt fi = 1;
        for (long i = 0; i <= n; ++i) {
          if (i > 0) fi *= i;
          BigInt fni = 1;
          for (long t = 2; t <= n - i; ++t) fni *= t;
          BigRational term = BigRational(1) / (BigRational(fni * fi) * (lam - i));
          rhs += (i % 2 == 0) ? term : BigRational(-term);
        }
        f.expect(c.lhs.at(static_cast<std::size_t>(n)) == lhs, to_string(lam) + " lhs n=" + std::to_string(n));
        f.expect(c.rhs.at(static_cast<std::size_t>(n)) == rhs, to_string(lam) + " rhs n=" + std::to_string(n));
        f.expect(lhs == rhs, to_string(lam) + " identity n=" + std::to_string(n));
      }
      f.expect(c.all_zero(), to_string(lam) + " residuals");
    });
  }
  return f.result(3, "Series identity with exact rationals");
}

CriterionResult equivalence(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 4);
  ClassifierOptions opt;
  opt.horizon = 128;
  opt.r_max = 6;
  for (int s = 0; s < 50; ++s) {
    Config cfg(rng.prime(), 64);
    Scalar lam(DensePAdic::from_rational(cfg, rng.rational(40, 15, -1)));
    const std::string tag = lam.literal() + " p=" + std::to_string(cfg.prime());
    guarded(f, tag, [&] { f.expect(equivalence_probe(lam, opt).agree, tag); });
  }
  return f.result(4, "Product and difference criteria agree");
}

namespace {

LaurentElement random_poly(Rng& rng, const Config& cfg, long lo, long hi, RingTag tag) {
  LaurentElement g(cfg, tag);
  for (long k = lo; k <= hi; ++k) {
    if (rng.uniform(0, 2) == 0) continue;
    BigRational c(rng.uniform(-9, 9), rng.uniform(1, 4));
    c.canonicalize();
    c *= BigRational(power(cfg.prime(), static_cast<unsigned long>(rng.uniform(0, 3))));
    g.set(k, DensePAdic::from_rational(cfg, c));
  }
  return g;
}

OperatorElement random_operator(Rng& rng, const Config& cfg) {
  OperatorElement op(cfg);
  const long d = rng.uniform(0, 3);
  for (long i = 0; i <= d; ++i) op.set(i, random_poly(rng, cfg, 0, 3, RingTag::disk()));
  return op;
}

}  // namespace

CriterionResult operator_algebra(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 5);
  for (int s = 0; s < 200; ++s) {
    Config cfg(rng.prime(), 64);
    guarded(f, "pair " + std::to_string(s), [&] {
      OperatorElement P = random_operator(rng, cfg), Q = random_operator(rng, cfg);
      LaurentElement a = random_poly(rng, cfg, -3, 3, RingTag::punctured());
      OperatorElement PQ = op_compose(P, Q);
      f.expect(op_apply(PQ, a) == op_apply(P, op_apply(Q, a)), "associativity pair " + std::to_string(s));
      for (long n = 0; n <= 3; ++n) {
        ExtValuation lhs = level_norm(PQ, n).exponent;
        ExtValuation rhs = level_norm(P, n).exponent + level_norm(Q, n).exponent;
        f.expect(lhs >= rhs, "submultiplicativity pair " + std::to_string(s) + " n=" + std::to_string(n));
      }
    });
  }
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Config cfg(p, 64);
    const OperatorElement d = OperatorElement::derivation_power(cfg, 1);
    for (long k = 0; k <= 10; ++k) {
      guarded(f, "ladder k=" + std::to_string(k), [&] {
        const OperatorElement xk = OperatorElement::multiplication(LaurentElement::x_power(cfg, k));
        OperatorElement comm = op_sub(op_compose(d, xk), op_compose(xk, d));
        LaurentElement expected(cfg);
        if (k > 0) expected.set(k - 1, DensePAdic::from_integer(cfg, k));
        f.expect(comm == OperatorElement::multiplication(expected), "ladder k=" + std::to_string(k));
      });
    }
  }
  return f.result(5, "Operator algebra");
}

CriterionResult b_recursion(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 6);
  for (int s = 0; s < 10; ++s) {
    Config cfg(rng.prime(), 64);
    const BigRational q = rng.rational(50, 9, 40);
    const Scalar lam(DensePAdic::from_rational(cfg, q));
    const NLambdaElement gen = NLambdaElement::generator(lam, cfg);
    BigRational prod = 1;
    for (long j = 0; j <= 32; ++j) {
      if (j > 0) prod *= q - (j - 1);
      guarded(f, to_string(q), [&] {
        OperatorElement op(cfg);
        op.set(j, LaurentElement::constant(DensePAdic::from_rational(cfg, 1 / prod)));
        const NLambdaElement got = n_apply(op, gen);
        const NLambdaElement want = NLambdaElement::monomial(lam, DensePAdic::from_integer(cfg, 1), -j);
        f.expect(got == want, to_string(q) + " j=" + std::to_string(j));
      });
    }
  }
  return f.result(6, "b-function recursion");
}

CriterionResult sufficient_radius(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 7);
  const Config cfg(5, 64);
  const Scalar lam(DensePAdic::from_rational(cfg, BigInt(1), BigInt(5)));
  guarded(f, "sufficient_r", [&] {
    const BFunctionData bd = bfunction_rank_one(lam, cfg);
    for (long n = 0; n <= 4; ++n) {
      SufficientR s = sufficient_r(bd, n, 64);
      f.expect(s.r && *s.r == n, "r(" + std::to_string(n) + ")");
      f.expect(s.validated, "validation flag n=" + std::to_string(n));
      if (!s.r) continue;
      // v(1/5 - s) = -1 for every integer s, so V_j = -j
      for (long j = 1; j <= 64; ++j) {
        const BigInt e = BigInt(j) * *s.r - BigInt(j) * n + j;
        f.expect(e >= 0 && s.validation.at(static_cast<std::size_t>(j - 1)) == e,
                 "validation n=" + std::to_string(n) + " j=" + std::to_string(j));
      }
    }
  });
  for (int t = 0; t < 50; ++t) {
    guarded(f, "round trip " + std::to_string(t), [&] {
      const long lo = -rng.uniform(0, 12);
      LaurentElement target(cfg, RingTag::punctured());
      for (long k = lo; k <= 0; ++k) {
        if (rng.uniform(0, 3) == 0) continue;
        BigRational c(rng.uniform(-20, 20), rng.uniform(1, 6));
        c.canonicalize();
        c *= BigRational(power(5, static_cast<unsigned long>(rng.uniform(0, 4))));
        target.set(k, DensePAdic::from_rational(cfg, c));
      }
      target.set_window(lo, 0);
      target.set_truncated(rng.uniform(0, 1) == 1);
      ThetaPreimage th = theta_preimage(lam, target, 2);
      f.expect(th.op.is_constant_coefficient(), "not constant-coefficient " + std::to_string(t));
      const NLambdaElement back = n_apply(th.op, NLambdaElement::generator(lam, cfg));
      f.expect(back.terms() == target.terms(), "round trip " + std::to_string(t));
    });
  }
  return f.result(7, "Sufficient radius and preimage round trip");
}

namespace {

void recheck_witness(Failures& f, const WitnessReport& rep, const LeBrasOracle& oracle, const std::string& tag) {
  BigInt V = 0;
  BigInt j = 0;
  long j_prev = 0;
  BigInt i_prev = 0;
  for (const auto& s : rep.steps) {
    for (; j < s.i; ++j) V += oracle.v(j);
    const std::string at = tag + " r=" + std::to_string(s.r);
    f.expect(BigInt(s.r) * s.j > BigInt(s.r - 1) * j_prev, at + " eps decreasing");
    f.expect(s.i > BigInt(s.j) && s.i > i_prev, at + " i_r > max(j_r, i_{r-1})");
    f.expect(s.product_valuation == V, at + " V_i");
    const BigInt margin = 2 * BigInt(s.r) * s.i - V;
    f.expect(margin < BigInt(s.r) * s.j, at + " |p^{2ri}/prod| > eps_r");
    f.expect((2 * s.i - s.j) * s.r - V < 0, at + " |g_i| > 1");
    f.expect(s.g_exponent == (2 * s.i - s.j) * s.r - V, at + " stored g exponent");
    j_prev = s.j;
    i_prev = s.i;
  }
}

}  // namespace

CriterionResult divergence(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 8);
  const BigInt cap = BigInt(1) << 20;
  for (unsigned long p : {2UL, 3UL}) {
    const std::string tag = "lebras:" + std::to_string(p) + ",4";
    guarded(f, tag, [&] {
      Config cfg(p, 64);
      const Scalar lam = parse_scalar(tag, cfg);
      WitnessReport rep = divergence_witness(lam, cfg, 4, 256, cap);
      f.expect(rep.witnessed(), tag + " not witnessed: " + rep.reason);
      f.expect(rep.steps.size() == 4, tag + " chain length");
      const std::string err = verify_witness(rep, lam);
      f.expect(err.empty(), tag + " verify: " + err);
      recheck_witness(f, rep, LeBrasOracle(p), tag);
    });
  }
  std::vector<std::pair<Config, Scalar>> positives;
  {
    Config c5(5, 64);
    positives.emplace_back(c5, Scalar(DensePAdic::from_rational(c5, BigInt(1), BigInt(5))));
    positives.emplace_back(c5, Scalar(DensePAdic::from_integer(c5, -1)));
    positives.emplace_back(c5, Scalar(DensePAdic::from_integer(c5, 3)));
  }
  while (positives.size() < 10) {
    Config cfg(rng.prime(), 64);
    positives.emplace_back(cfg, Scalar(DensePAdic::from_rational(cfg, rng.rational(40, 12, -1))));
  }
  for (const auto& [cfg, lam] : positives) {
    guarded(f, lam.literal(), [&] {
      WitnessReport rep = divergence_witness(lam, cfg, 4, 256, cap);
      f.expect(!rep.witnessed(), lam.literal() + " p=" + std::to_string(cfg.prime()) + " unexpectedly witnessed");
    });
  }
  return f.result(8, "Divergence witness");
}

CriterionResult probe_consistency(std::uint64_t seed) {
  Failures f;
  Rng rng(seed + 9);
  std::vector<std::pair<Config, Scalar>> positives;
  {
    Config c5(5, 64);
    positives.emplace_back(c5, Scalar(DensePAdic::from_rational(c5, BigInt(1), BigInt(5))));
    positives.emplace_back(c5, Scalar(DensePAdic::from_integer(c5, 3)));
    positives.emplace_back(c5, Scalar(DensePAdic::from_integer(c5, -1)));
    positives.emplace_back(c5, Scalar(DensePAdic::from_rational(c5, BigInt(7), BigInt(25))));
  }
  while (positives.size() < 12) {
    Config cfg(rng.prime(), 64);
    positives.emplace_back(cfg, Scalar(DensePAdic::from_rational(cfg, rng.rational(40, 12, -1))));
  }
  for (const auto& [cfg, lam] : positives) {
    const std::string tag = lam.literal() + " p=" + std::to_string(cfg.prime());
    guarded(f, tag, [&] {
      ProbeVerdict v = coadmissibility_probe(lam, cfg);
      f.expect(v.kind == ProbeVerdict::Kind::CoadmissibleEvidence, tag + " -> " + probe_kind_name(v.kind));
      f.expect(!v.conflict, tag + " conflict");
    });
  }
  for (unsigned long p : {2UL, 3UL}) {
    const std::string tag = "lebras:" + std::to_string(p) + ",4";
    guarded(f, tag, [&] {
      Config cfg(p, 64);
      ProbeVerdict v = coadmissibility_probe(parse_scalar(tag, cfg), cfg);
      f.expect(v.kind == ProbeVerdict::Kind::DivergenceWitnessed, tag + " -> " + probe_kind_name(v.kind));
      f.expect(!v.conflict, tag + " conflict");
    });
  }
  return f.result(9, "Probe consistency");
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  return {lebras_valuations(),       positive_type_facts(seed), kedlaya_identity(seed),
          equivalence(seed),         operator_algebra(seed),    b_recursion(seed),
          sufficient_radius(seed),   divergence(seed),          probe_consistency(seed)};
}

}  // namespace padx::acceptance
