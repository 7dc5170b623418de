#include <gtest/gtest.h>

#include "gen.hpp"
#include "padx/connection.hpp"

using namespace padx;

namespace {

DensePAdic n(const Config& c, long v) { return DensePAdic::from_integer(c, v); }
DensePAdic q(const Config& c, long a, long b) { return DensePAdic::from_rational(c, a, b); }

OperatorElement term(const Config& c, long i, const DensePAdic& coeff, long k) {
  OperatorElement op(c);
  op.set(i, LaurentElement::monomial(coeff, k, RingTag::disk()));
  return op;
}

}  // namespace

TEST(Connection, ApplyExamples) {
  Config c(5, 16);
  Scalar lam = parse_scalar("rat:1/5", c);
  auto x = NLambdaElement::generator(lam, c);
  auto d = OperatorElement::derivation_power(c, 1);
  EXPECT_EQ(n_apply(d, x), NLambdaElement::monomial(lam, q(c, 1, 5), -1));
  EXPECT_EQ(n_apply(term(c, 1, n(c, 1), 1), x), NLambdaElement::monomial(lam, q(c, 1, 5), 0));
  auto xm1 = NLambdaElement::monomial(lam, n(c, 1), -1);
  EXPECT_EQ(n_apply(d, xm1), NLambdaElement::monomial(lam, q(c, -4, 5), -2));
  EXPECT_EQ(n_derive(xm1), n_apply(d, xm1));
}

TEST(Connection, BFunctionRankOne) {
  Config c(5, 16);
  auto b = bfunction_rank_one(parse_scalar("rat:1/5", c), c);
  ASSERT_EQ(b.roots.size(), 1u);
  EXPECT_EQ(b.roots[0].value.literal(), "rat:1/5");
  EXPECT_EQ(b.generator_shift, 0);

  auto b2 = bfunction_rank_one(parse_scalar("int:2", c), c);
  EXPECT_EQ(b2.generator_shift, 3);
  EXPECT_EQ(b2.roots[0].value.exact_integer(), BigInt(-1));

  Config c2(2, 64);
  auto bl = bfunction_rank_one(parse_scalar("lebras:2,4", c2), c2);
  EXPECT_TRUE(bl.roots[0].value.is_sparse());
  EXPECT_EQ(bl.generator_shift, 0);

  EXPECT_THROW(BFunctionData::from_roots({{Scalar(n(c, 3)), 1}}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(BFunctionData::from_roots({{Scalar(n(c, -3)), 0}}, {0, 1}), std::invalid_argument);
  EXPECT_NO_THROW(BFunctionData::from_roots({{Scalar(n(c, -3)), 2}}, {0, 1}));
}

TEST(Connection, SufficientR) {
  Config c(5, 16);
  auto b = bfunction_rank_one(parse_scalar("rat:1/5", c), c);
  // V_j = -j so the validation margins are j (r + r' + 1)
  for (long lvl = 0; lvl <= 4; ++lvl) {
    auto s = sufficient_r(b, lvl, 32);
    ASSERT_TRUE(s.r);
    EXPECT_EQ(*s.r, lvl);
    EXPECT_EQ(s.r_prime, -lvl);
    EXPECT_TRUE(s.validated);
    for (long j = 1; j <= 32; ++j) EXPECT_EQ(s.validation[j - 1], j);
  }

  auto bi = bfunction_rank_one(parse_scalar("int:-1", c), c);
  auto si = sufficient_r(bi, 0, 64);
  ASSERT_TRUE(si.r);
  EXPECT_TRUE(si.validated);

  Config c2(2, 64);
  auto bl = bfunction_rank_one(parse_scalar("lebras:2,4", c2), c2);
  auto sl = sufficient_r(bl, 0, 64);
  EXPECT_FALSE(sl.r);
  ASSERT_TRUE(sl.failing_root);
  EXPECT_EQ(*sl.failing_root, 0u);

  EXPECT_THROW(sufficient_r(b, 0, 0), std::invalid_argument);
}

TEST(Connection, SufficientRIsMinimalOnItsWitnessScale) {
  // for roots with V_j >= 0 validation at r-1 must fail when r > 0 and r' < 0
  gen::Rng rng(70);
  for (int t = 0; t < 40; ++t) {
    Config c(rng.prime(), 24);
    Scalar lam(DensePAdic::from_rational(c, rng.non_pole(40, 7, 64)));
    auto b = bfunction_rank_one(lam, c);
    const long lvl = rng.uniform(0, 4);
    auto s = sufficient_r(b, lvl, 32);
    if (!s.r) continue;
    EXPECT_EQ(*s.r, std::max(0L, *s.r_double_prime - s.r_prime));
    for (std::size_t j = 0; j < s.validation.size(); ++j) EXPECT_GE(s.validation[j], 0);
  }
}

TEST(Connection, ThetaPreimageExamples) {
  Config c(5, 24);
  Scalar lam = parse_scalar("rat:1/5", c);
  auto t1 = theta_preimage(lam, LaurentElement::x_power(c, -1, RingTag::punctured()), 4);
  EXPECT_EQ(t1.op.coefficient(1).coefficient(0), n(c, 5));
  EXPECT_EQ(t1.op.coefficient(1).coefficient(0).valuation(), ExtValuation::exact(1));

  auto t0 = theta_preimage(lam, LaurentElement::x_power(c, 0, RingTag::punctured()), 4);
  EXPECT_EQ(t0.op, OperatorElement::identity(c));

  LaurentElement target(c, RingTag::punctured());
  for (long s = 0; s <= 8; ++s) target.set(-s, DensePAdic::power_of_p(c, 2 * s));
  target.set_truncated(true);
  auto tp = theta_preimage(lam, target, 3);
  for (long s = 0; s <= 8; ++s)
    EXPECT_EQ(tp.op.coefficient(s).coefficient(0).valuation(), ExtValuation::exact(3 * s)) << s;
  ASSERT_TRUE(tp.membership);
  EXPECT_TRUE(tp.membership->levels[2].passes);
  EXPECT_FALSE(tp.membership->levels[3].passes);
  EXPECT_EQ(tp.membership->passes_through(), 2);

  std::vector<std::pair<long, BigInt>> ex{{1, 2}, {4, 8}};
  auto e = theta_preimage_exponents(lam, ex, 1 << 20);
  ASSERT_TRUE(e[0] && e[1]);
  EXPECT_EQ(*e[0], 3);
  EXPECT_EQ(*e[1], 12);

  EXPECT_THROW(theta_preimage(parse_scalar("int:2", c), LaurentElement::x_power(c, -4, RingTag::punctured()), 2),
               std::domain_error);
  EXPECT_NO_THROW(theta_preimage(parse_scalar("int:2", c), LaurentElement::x_power(c, -2, RingTag::punctured()), 2));
  EXPECT_THROW(theta_preimage(lam, LaurentElement::x_power(c, 1, RingTag::punctured()), 2), std::invalid_argument);
}

TEST(ConnectionProperties, ThetaPreimageRoundTrip) {
  gen::Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    Config c(rng.prime(), 32);
    Scalar lam(DensePAdic::from_rational(c, rng.non_pole(30, 7, 16)));
    auto target = gen::series(rng, c, -5, 0, RingTag::punctured());
    auto pre = theta_preimage(lam, target, 2);
    EXPECT_TRUE(pre.op.is_constant_coefficient());
    auto img = n_apply(pre.op, NLambdaElement::generator(lam, c));
    EXPECT_EQ(img.series(), target);
  }
}

TEST(Connection, ConstantReductionExamples) {
  Config c(5, 16);
  Scalar lam = parse_scalar("rat:3/7", c);
  const DensePAdic l = lam.to_dense(c);
  auto xd = constant_reduction(term(c, 1, n(c, 1), 1), lam, 2);
  EXPECT_EQ(xd.h[0], l);
  EXPECT_TRUE(xd.h[1].is_zero());
  auto d = constant_reduction(OperatorElement::derivation_power(c, 1), lam, 2);
  EXPECT_TRUE(d.h[0].is_zero());
  EXPECT_EQ(d.h[1], n(c, 1));
  auto x2d2 = constant_reduction(term(c, 2, n(c, 1), 2), lam, 3);
  EXPECT_EQ(x2d2.h[0], l * (l - n(c, 1)));
  EXPECT_THROW(constant_reduction(xd.op, parse_scalar("rat:1/5", c), 2), std::invalid_argument);
}

TEST(ConnectionProperties, ConstantReductionSameAction) {
  gen::Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    Config c(rng.prime(), 32);
    auto r = rng.rational(30, 7);
    if (DensePAdic::from_rational(c, r).valuation() < ExtValuation::exact(0)) continue;
    Scalar lam(DensePAdic::from_rational(c, r));
    auto P = gen::op(rng, c);
    auto red = constant_reduction(P, lam, P.order());
    auto x = NLambdaElement::generator(lam, c);
    auto lhs = n_apply(P, x), rhs = n_apply(red.op, x);
    for (long k = -P.order(); k <= 0; ++k) EXPECT_EQ(lhs.coefficient(k), rhs.coefficient(k)) << k;
    for (std::size_t i = 0; i < red.h.size(); ++i) EXPECT_TRUE(red.h[i].valuation() >= red.bound[i]);
  }
}

TEST(ConnectionProperties, EigenRelation) {
  // (x d) x^k x^lambda = (lambda + k) x^k x^lambda
  gen::Rng rng(73);
  for (int t = 0; t < 100; ++t) {
    Config c(rng.prime(), 32);
    Scalar lam(DensePAdic::from_rational(c, rng.rational(30, 7)));
    const long k = rng.uniform(-6, 6);
    auto v = NLambdaElement::monomial(lam, n(c, 1), k);
    auto out = n_apply(term(c, 1, n(c, 1), 1), v);
    EXPECT_EQ(out, NLambdaElement::monomial(lam, lam.to_dense(c) + n(c, k), k));
  }
}

TEST(ConnectionProperties, BRecursion) {
  // d^j x^lambda = lambda (lambda-1) ... (lambda-j+1) x^{-j} x^lambda
  gen::Rng rng(74);
  for (int t = 0; t < 60; ++t) {
    Config c(rng.prime(), 32);
    Scalar lam(DensePAdic::from_rational(c, rng.rational(30, 7)));
    const DensePAdic l = lam.to_dense(c);
    auto v = NLambdaElement::generator(lam, c);
    DensePAdic falling = n(c, 1);
    for (long j = 1; j <= 6; ++j) {
      v = n_derive(v);
      falling = falling * (l - n(c, j - 1));
      EXPECT_EQ(v, falling.is_zero() ? NLambdaElement(lam, c) : NLambdaElement::monomial(lam, falling, -j));
    }
  }
}

TEST(Connection, DivergenceWitness) {
  Config c(2, 64);
  Scalar lam = parse_scalar("lebras:2,4", c);
  auto rep = divergence_witness(lam, c, 4, 256, BigInt(1) << 20);
  ASSERT_TRUE(rep.witnessed());
  ASSERT_EQ(rep.steps.size(), 4u);
  const long expect_i[] = {5, 65541, 65542, 65543};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(rep.steps[k].r, static_cast<long>(k + 1));
    EXPECT_EQ(rep.steps[k].j, 1);
    EXPECT_EQ(rep.steps[k].i, expect_i[k]);
    EXPECT_EQ(rep.steps[k].g_exponent, rep.steps[k].coefficient_exponent - rep.steps[k].product_valuation);
  }
  EXPECT_EQ(verify_witness(rep, lam), "");
  EXPECT_TRUE(rep.m.has_value());

  auto tampered = rep;
  tampered.steps[1].product_valuation += 1;
  EXPECT_NE(verify_witness(tampered, lam), "");

  Config c5(5, 16);
  EXPECT_FALSE(divergence_witness(parse_scalar("rat:1/5", c5), c5, 4, 256, BigInt(1) << 20).witnessed());
  EXPECT_FALSE(divergence_witness(parse_scalar("int:-1", c5), c5, 4, 256, BigInt(1) << 20).witnessed());
  EXPECT_THROW(divergence_witness(parse_scalar("int:-1", c5), c5, 0, 256, 100), std::invalid_argument);
}

TEST(Connection, Probe) {
  Config c5(5, 16);
  auto pr = coadmissibility_probe(parse_scalar("rat:1/5", c5), c5);
  EXPECT_EQ(pr.kind, ProbeVerdict::Kind::CoadmissibleEvidence);
  ASSERT_EQ(pr.levels.size(), 5u);
  for (long lvl = 0; lvl <= 4; ++lvl) EXPECT_EQ(*pr.levels[lvl].r, lvl);
  EXPECT_FALSE(pr.conflict);

  Config c2(2, 64);
  auto pl = coadmissibility_probe(parse_scalar("lebras:2,4", c2), c2);
  EXPECT_EQ(pl.kind, ProbeVerdict::Kind::DivergenceWitnessed);
  EXPECT_TRUE(pl.witness.witnessed());

  auto p3 = coadmissibility_probe(parse_scalar("int:3", c5), c5);
  EXPECT_EQ(p3.kind, ProbeVerdict::Kind::CoadmissibleEvidence);
  ASSERT_TRUE(p3.bfunction);
  EXPECT_EQ(p3.bfunction->generator_shift, 4);
  EXPECT_EQ(probe_kind_name(p3.kind), "CoadmissibleEvidence");
}
