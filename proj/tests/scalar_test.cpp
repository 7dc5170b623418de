#include <gtest/gtest.h>

#include "gen.hpp"
#include "padx/scalar.hpp"

using namespace padx;

namespace {

BigInt vp(unsigned long p, BigInt n) {
  BigInt v = 0;
  for (; n % p == 0; n /= p) ++v;
  return v;
}

}  // namespace

TEST(Scalar, ParseLiterals) {
  Config c5(5, 20), c2(2, 20);
  EXPECT_EQ(parse_scalar("rat:1/5", c5).valuation(), ExtValuation::exact(-1));
  EXPECT_EQ(parse_scalar("int:-10", c5).exact_integer(), BigInt(-10));
  EXPECT_TRUE(parse_scalar("int:7", c5).is_nonnegative_integer());
  EXPECT_FALSE(parse_scalar("int:-1", c5).is_nonnegative_integer());
  EXPECT_EQ(parse_scalar("sparse:[1,4]", c2).exact_integer(), BigInt(18));
  EXPECT_EQ(parse_scalar("lebras:2,4", c2).construction(), std::optional<std::string>("lebras:2,4"));
  auto d = parse_scalar("digits:v=2;[1,2,3]", c5);
  EXPECT_EQ(d.valuation(), ExtValuation::exact(2));
  EXPECT_FALSE(d.dense().is_exact());
  EXPECT_THROW(parse_scalar("lebras:3,4", c2), std::invalid_argument);
  EXPECT_THROW(parse_scalar("rat:1/0", c5), std::domain_error);
  EXPECT_THROW(parse_scalar("1/5", c5), std::invalid_argument);
  EXPECT_THROW(parse_scalar("digits:v=0;[7]", c5), std::invalid_argument);
  EXPECT_THROW(parse_scalar("foo:1", c5), std::invalid_argument);
}

TEST(Scalar, DifferenceExamples) {
  Config c2(2, 64), c5(5, 64);
  auto lb = parse_scalar("lebras:2,4", c2);
  EXPECT_EQ(valuation_of_difference(lb, 5, 20), ExtValuation::exact(0));
  EXPECT_EQ(valuation_of_difference(lb, 4, 20), ExtValuation::exact(16));
  // exact cancellation of the residue: the next support exponent is known exactly
  EXPECT_EQ(valuation_of_difference(lb, 4, 10), ExtValuation::exact(16));
  EXPECT_EQ(valuation_of_difference(lb, 65540 + 1024, 10), ExtValuation::exact(10));
  // 2^16 + 2^16 carries into unknown territory
  EXPECT_EQ(valuation_of_difference(lb, 4 - 65536, 10), ExtValuation::lower_bound(16));
  auto fifth = parse_scalar("rat:1/5", c5);
  EXPECT_EQ(valuation_of_difference(fifth, 3, 20), ExtValuation::exact(-1));
  EXPECT_TRUE(valuation_of_difference(parse_scalar("int:3", c5), 3, 20).is_infinite());
  // past the last partial sum that fits: lambda - 65540 has valuation 2^32
  EXPECT_EQ(valuation_of_difference(lb, 65540, 20), ExtValuation::exact(BigInt(1) << 32));
}

TEST(Scalar, DifferenceMatchesRationalOracle) {
  gen::Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    unsigned long p = rng.prime();
    Config cfg(p, 32);
    BigRational q = rng.scaled(p, 500, 60, -3, 6);
    const long j = rng.uniform(-50, 200);
    const BigInt cap = rng.uniform(1, 24);
    Scalar lam(DensePAdic::from_rational(cfg, q));
    BigInt num = q.get_num() - BigInt(j) * q.get_den();
    ExtValuation got = valuation_of_difference(lam, j, cap);
    if (num == 0) {
      EXPECT_TRUE(got.is_infinite());
      continue;
    }
    BigInt v = vp(p, num) - vp(p, q.get_den());
    if (v < cap) EXPECT_EQ(got, ExtValuation::exact(v));
    else EXPECT_EQ(got, ExtValuation::lower_bound(cap));
  }
}

TEST(Scalar, DifferenceMatchesDigitOracleForLeBras) {
  Config cfg(2, 64);
  auto lb = parse_scalar("lebras:2,4", cfg);
  const BigInt M = 65540;  // lambda = M + 2^(2^32) + ...
  DifferenceValuator val(lb, BigInt(1) << 20);
  for (long j = 0; j < 70000; j += 7) {
    if (j == 65540) continue;
    EXPECT_EQ(val(j), ExtValuation::exact(vp(2, M - j))) << j;
  }
}

TEST(Scalar, DifferenceForInexactDigits) {
  Config cfg(3, 10);
  // 1 + 3 + 3^2 known to 3 digits
  auto lam = parse_scalar("digits:v=0;[1,1,1]", cfg);
  EXPECT_EQ(valuation_of_difference(lam, 2, 20), ExtValuation::exact(0));
  EXPECT_EQ(valuation_of_difference(lam, 4, 20), ExtValuation::exact(2));
  EXPECT_EQ(valuation_of_difference(lam, 13, 20), ExtValuation::lower_bound(3));
}

TEST(Scalar, ProductDifferenceConsistency) {
  gen::Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    unsigned long p = rng.prime();
    Config cfg(p, 32);
    Scalar lam(DensePAdic::from_rational(cfg, rng.scaled(p, 99, 20, -2, 2)));
    DifferenceValuator val(lam, BigInt(1) << 20);
    for (long j = 0; j < 40; ++j) EXPECT_EQ(val(j), valuation_of_difference(lam, j, BigInt(1) << 20));
  }
}
