#include <gtest/gtest.h>

#include "gen.hpp"
#include "padx/laurent.hpp"

using namespace padx;

namespace {

DensePAdic n(const Config& c, long v) { return DensePAdic::from_integer(c, v); }

LaurentElement poly(const Config& c, std::initializer_list<std::pair<long, long>> terms, RingTag tag = RingTag::punctured()) {
  LaurentElement a(c, tag);
  for (auto [k, v] : terms) a.set(k, n(c, v));
  return a;
}

}  // namespace

TEST(Laurent, Examples) {
  Config c(5, 32);
  auto prod = l_mul(poly(c, {{0, 1}, {1, 1}}, RingTag::disk()), poly(c, {{0, 1}, {1, -1}}, RingTag::disk()));
  EXPECT_EQ(prod, poly(c, {{0, 1}, {2, -1}}, RingTag::disk()));
  EXPECT_EQ(prod.level_norm(0).exponent, ExtValuation::exact(0));

  auto inv = LaurentElement::x_power(c, -1, RingTag::punctured());
  for (long lvl = 0; lvl <= 5; ++lvl) EXPECT_EQ(inv.level_norm(lvl).exponent, ExtValuation::exact(-lvl));

  auto five = LaurentElement::monomial(n(c, 5), -2, RingTag::annulus(1));
  EXPECT_EQ(five.level_norm(1).exponent, ExtValuation::exact(-1));
}

TEST(Laurent, Derivative) {
  Config c(3, 32);
  EXPECT_EQ(l_derive(LaurentElement::x_power(c, 2)), LaurentElement::monomial(n(c, 2), 1, RingTag::disk()));
  EXPECT_EQ(l_derive(LaurentElement::x_power(c, -1, RingTag::punctured())),
            LaurentElement::monomial(n(c, -1), -2, RingTag::punctured()));
  EXPECT_TRUE(l_derive(LaurentElement::constant(n(c, 1))).is_zero());
}

TEST(Laurent, Membership) {
  Config c(2, 32);
  LaurentElement a(c, RingTag::punctured());
  for (long s = 0; s <= 8; ++s) a.set(-s, DensePAdic::power_of_p(c, 2 * s));
  a.set_truncated(true);
  auto rep = membership_in_O_U(a, 3);
  ASSERT_EQ(rep.levels.size(), 4u);
  EXPECT_TRUE(rep.levels[0].passes);
  EXPECT_TRUE(rep.levels[1].passes);
  EXPECT_FALSE(rep.levels[2].passes);  // |p^{2s} x^{-s}|_2 = 1 for every s
  EXPECT_FALSE(rep.levels[3].passes);
  for (std::size_t k = 0; k < rep.levels[2].margins.size(); ++k) EXPECT_EQ(rep.levels[2].margins[k], 0);

  auto finite = membership_in_O_U(poly(c, {{-3, 1}, {-1, 7}, {2, 1}}), 6);
  EXPECT_TRUE(finite.finite);
  EXPECT_TRUE(finite.all_pass());
}

TEST(Laurent, DiskRejectsNegativePowers) {
  Config c(5, 8);
  LaurentElement d(c, RingTag::disk());
  EXPECT_THROW(d.set(-1, n(c, 1)), std::invalid_argument);
}

TEST(Laurent, WindowPolicy) {
  Config c(5, 8);
  auto a = poly(c, {{0, 1}, {3, 1}}, RingTag::disk());
  WindowPolicy strict{4, false};
  EXPECT_THROW(l_mul(a, a, strict), std::length_error);
  WindowPolicy clip{4, true};
  auto r = l_mul(a, a, clip);
  EXPECT_TRUE(r.truncated());
  EXPECT_EQ(r.coefficient(3), n(c, 2));
  EXPECT_TRUE(r.coefficient(6).is_zero());
}

TEST(Laurent, ParseLiteral) {
  Config c(5, 16);
  auto a = parse_laurent("laurent:{-2: 'rat:1/5', 0: 'int:1'}", c);
  EXPECT_EQ(a.tag(), RingTag::punctured());
  EXPECT_EQ(a.coefficient(-2), DensePAdic::from_rational(c, 1, 5));
  EXPECT_EQ(a.coefficient(0), n(c, 1));
  auto d = parse_laurent("laurent:{0: 'int:1', 2: 'int:3'}", c);
  EXPECT_EQ(d.tag(), RingTag::disk());
  auto t = parse_laurent("laurent:{-1: 'int:1'};tag=annulus:2;window=[-4,3];truncated", c);
  EXPECT_EQ(t.tag(), RingTag::annulus(2));
  EXPECT_EQ(t.low(), -4);
  EXPECT_EQ(t.high(), 3);
  EXPECT_TRUE(t.truncated());
  EXPECT_EQ(parse_laurent(t.literal(), c), t);
  EXPECT_THROW(parse_laurent("laurent:{-1: 'int:1'};tag=disk", c), std::invalid_argument);
  EXPECT_THROW(parse_laurent("laurent:{x: 'int:1'}", c), std::invalid_argument);
}

TEST(LaurentProperties, NormsOfProducts) {
  gen::Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    Config c(rng.prime(), 24);
    auto a = gen::series(rng, c, -4, 4, RingTag::punctured());
    auto b = gen::series(rng, c, -4, 4, RingTag::punctured());
    auto ab = l_mul(a, b);
    // exact multiplicativity on each circle |x| = |p|^n
    for (long lvl = 0; lvl <= 4; ++lvl)
      EXPECT_EQ(ab.circle_valuation(lvl), a.circle_valuation(lvl) + b.circle_valuation(lvl));
    EXPECT_EQ(ab.level_norm(0).exponent, a.level_norm(0).exponent + b.level_norm(0).exponent);
    for (long lvl = 1; lvl <= 4; ++lvl) {
      // the annulus norm is the larger of its two boundary circles
      ExtValuation two = min(a.circle_valuation(0) + b.circle_valuation(0),
                             a.circle_valuation(lvl) + b.circle_valuation(lvl));
      EXPECT_EQ(ab.level_norm(lvl).exponent, two);
      EXPECT_TRUE(ab.level_norm(lvl).exponent >= a.level_norm(lvl).exponent + b.level_norm(lvl).exponent);
    }
    auto da = gen::series(rng, c, 0, 5, RingTag::disk()), db = gen::series(rng, c, 0, 5, RingTag::disk());
    for (long lvl = 0; lvl <= 4; ++lvl)
      EXPECT_EQ(l_mul(da, db).level_norm(lvl).exponent, da.level_norm(lvl).exponent + db.level_norm(lvl).exponent);
  }
}

TEST(LaurentProperties, Leibniz) {
  gen::Rng rng(52);
  for (int t = 0; t < 300; ++t) {
    Config c(rng.prime(), 24);
    auto a = gen::series(rng, c, -4, 4, RingTag::punctured());
    auto b = gen::series(rng, c, -4, 4, RingTag::punctured());
    EXPECT_EQ(l_derive(l_mul(a, b)), l_add(l_mul(l_derive(a), b), l_mul(a, l_derive(b))));
  }
}

TEST(LaurentProperties, LevelMonotoneAndTateNorm) {
  gen::Rng rng(53);
  for (int t = 0; t < 300; ++t) {
    Config c(rng.prime(), 24);
    auto a = gen::series(rng, c, -5, 5, RingTag::punctured());
    for (long lvl = 0; lvl < 5; ++lvl) EXPECT_TRUE(a.level_norm(lvl + 1).exponent <= a.level_norm(lvl).exponent);
    auto d = gen::series(rng, c, 0, 6, RingTag::disk());
    ExtValuation sup = ExtValuation::infinity();
    for (const auto& [k, ck] : d.terms()) sup = min(sup, ck.valuation());
    EXPECT_EQ(d.gauss_valuation(), sup);
  }
}

TEST(LaurentProperties, RingAxioms) {
  gen::Rng rng(54);
  for (int t = 0; t < 200; ++t) {
    Config c(rng.prime(), 24);
    auto a = gen::series(rng, c, -3, 3, RingTag::punctured());
    auto b = gen::series(rng, c, -3, 3, RingTag::punctured());
    auto e = gen::series(rng, c, -3, 3, RingTag::punctured());
    EXPECT_EQ(l_mul(a, b), l_mul(b, a));
    EXPECT_EQ(l_mul(l_mul(a, b), e), l_mul(a, l_mul(b, e)));
    EXPECT_EQ(l_mul(a, l_add(b, e)), l_add(l_mul(a, b), l_mul(a, e)));
    EXPECT_TRUE(l_sub(a, a).is_zero());
  }
}
