#include <gtest/gtest.h>

#include "gen.hpp"
#include "padx/evidence.hpp"
#include "padx/type_classifier.hpp"

using namespace padx;

namespace {

BigInt vp(unsigned long p, BigInt n) {
  if (n < 0) n = -n;
  BigInt v = 0;
  for (; n % p == 0; n /= p) ++v;
  return v;
}

ClassifierOptions box(long horizon, long r_max, BigInt cap = BigInt(1) << 20) {
  ClassifierOptions o;
  o.horizon = horizon;
  o.r_max = r_max;
  o.cap = cap;
  return o;
}

}  // namespace

TEST(ProductProfile, Examples) {
  Config c5(5, 64), c2(2, 64);
  auto five = product_profile(parse_scalar("int:5", c5), 10, 20);
  EXPECT_TRUE(five.zero_hit);
  EXPECT_EQ(five.zero_index, 5);
  EXPECT_TRUE(five.at(6).is_infinite());
  EXPECT_FALSE(five.at(5).is_infinite());

  auto fifth = product_profile(parse_scalar("rat:1/5", c5), 8, 20);
  for (long i = 1; i <= 8; ++i) EXPECT_EQ(fifth.at(i), ExtValuation::exact(-i));

  // lambda = 4 + 2^16 + 2^(2^32): v(lambda - j) = v_2(65540 - j) for j < 5
  auto lb = product_profile(parse_scalar("lebras:2,3", c2), 5, 40);
  const std::vector<long> expect{2, 2, 3, 3, 19};
  for (long i = 1; i <= 5; ++i) EXPECT_EQ(lb.at(i), ExtValuation::exact(expect[static_cast<std::size_t>(i - 1)]));
}

TEST(ProductProfile, PrefixSumsOfDifferences) {
  gen::Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    unsigned long p = rng.prime();
    Config cfg(p, 32);
    Scalar lam(DensePAdic::from_rational(cfg, rng.scaled(p, 80, 30, -2, 3)));
    const BigInt cap = 1 << 20;
    auto prof = product_profile(lam, 50, cap);
    BigInt acc = 0;
    BigRational q = *lam.dense().exact_value();
    for (long i = 1; i <= 50; ++i) {
      BigInt num = q.get_num() - BigInt(i - 1) * q.get_den();
      if (num == 0) {
        EXPECT_TRUE(prof.at(i).is_infinite());
        break;
      }
      acc += vp(p, num) - vp(p, q.get_den());
      EXPECT_EQ(prof.at(i), ExtValuation::exact(acc));
    }
  }
}

TEST(Classify, Examples) {
  Config c5(5, 64), c2(2, 64);
  EXPECT_EQ(classify_positive_type(parse_scalar("int:7", c5)).category, TypeVerdict::Category::PositiveInteger);

  auto v = classify_positive_type(parse_scalar("rat:1/5", c5), box(32, 4));
  EXPECT_EQ(v.category, TypeVerdict::Category::PositiveWitness);
  EXPECT_EQ(v.r, 0);
  ASSERT_FALSE(v.margins.empty());
  // margins i*0 - (-i) = i on the tail window
  const long first = 32 - static_cast<long>(v.margins.size()) + 1;
  for (std::size_t k = 0; k < v.margins.size(); ++k) EXPECT_EQ(v.margins[k], first + static_cast<long>(k));

  auto lb = classify_positive_type(parse_scalar("lebras:2,4", c2), box(64, 8));
  EXPECT_EQ(lb.category, TypeVerdict::Category::NoWitnessUpTo);
  EXPECT_EQ(lb.proof_tag, std::optional<std::string>("ProvenTypeZeroByConstruction(lebras:2,4)"));
  EXPECT_FALSE(lb.positive());

  EXPECT_THROW(classify_positive_type(parse_scalar("rat:1/5", c5), box(7, 4)), std::invalid_argument);
}

TEST(Classify, NoProofTagFromSearchAlone) {
  Config c2(2, 64);
  // a short finite sparse number is an integer, hence positive; an inexact
  // number never carries a proof tag
  auto v = classify_positive_type(parse_scalar("digits:v=0;[1,0,1,1]", c2), box(16, 2));
  EXPECT_FALSE(v.proof_tag.has_value());
}

TEST(Classify, LargeAbsoluteValueRule) {
  gen::Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    unsigned long p = rng.prime();
    Config cfg(p, 32);
    const long k = rng.uniform(1, 4);
    long u = 0;
    while (u % static_cast<long>(p) == 0) u = rng.uniform(-300, 300);
    Scalar lam(DensePAdic::from_rational(cfg, BigInt(u), pow_p(p, static_cast<unsigned long>(k))));
    auto opt = box(64, 8);
    auto v = classify_positive_type(lam, opt);
    EXPECT_EQ(v.category, TypeVerdict::Category::PositiveWitness);
    EXPECT_LE(v.r, k);
    auto prof = product_profile(lam, 64, opt.cap);
    for (long i = 1; i <= 64; ++i) EXPECT_EQ(prof.at(i), ExtValuation::exact(-k * i));
    EXPECT_TRUE(tail_window_passes(product_margins(prof, k), opt.threshold));
  }
}

TEST(Classify, ShiftInvariance) {
  gen::Rng rng(43);
  std::vector<std::pair<Config, Scalar>> sample;
  for (int t = 0; t < 25; ++t) {
    Config cfg(rng.prime(), 64);
    sample.emplace_back(cfg, Scalar(DensePAdic::from_rational(cfg, rng.rational(40, 12))));
  }
  Config c2(2, 64);
  sample.emplace_back(c2, parse_scalar("lebras:2,4", c2));
  for (const auto& [cfg, lam] : sample) {
    for (long n = -4; n <= 4; ++n) {
      auto opt = box(64 + 4 * std::abs(n), 8);
      EXPECT_EQ(classify_positive_type(lam, opt).positive(),
                classify_positive_type(shift(lam, n, opt.cap, cfg), opt).positive())
          << lam.literal() << " n=" << n;
    }
  }
}

TEST(Shift, Examples) {
  Config c3(3, 32), c2(2, 64);
  auto a = shift(parse_scalar("rat:1/2", c3), 1, 20, c3);
  EXPECT_EQ(a.dense().exact_value(), BigRational(-1, 2));
  EXPECT_TRUE(shift(parse_scalar("int:5", c3), 5, 20, c3).dense().is_zero());
  auto lb = shift(parse_scalar("lebras:2,3", c2), 4, BigInt(1) << 17, c2);
  ASSERT_TRUE(lb.is_sparse());
  ASSERT_EQ(lb.sparse().depth(), 2u);
  EXPECT_EQ(lb.sparse().support()[0].value(), 16);
  EXPECT_EQ(lb.sparse().support()[1].value(), BigInt(1) << 32);
  // the construction survives the shift, so does the proof tag
  EXPECT_TRUE(classify_positive_type(lb).proof_tag.has_value());
}

TEST(TypeEstimate, Examples) {
  Config c3(3, 64), c5(5, 64), c2(2, 64);
  auto half = type_estimate(parse_scalar("rat:1/2", c3), box(81, 8));
  BigRational best = -1000;
  for (long i = 1; i <= 81; ++i) {
    BigRational q(vp(3, BigInt(1 - 2 * i)), BigInt(i));
    q.canonicalize();
    best = std::max(best, q);
  }
  ASSERT_TRUE(half.radius_bound_exponent);
  EXPECT_EQ(*half.radius_bound_exponent, best);
  EXPECT_EQ(half.witness_r, 1);

  auto fifth = type_estimate(parse_scalar("rat:1/5", c5), box(16, 8));
  for (const auto& e : fifth.entries) EXPECT_EQ(e.v, ExtValuation::exact(-1));
  // 0*i - (-1) stays at 1, so r = 0 does not make the terms tend to zero
  EXPECT_EQ(fifth.witness_r, 1);

  auto lb = type_estimate(parse_scalar("lebras:2,3", c2), box(20, 8, BigInt(1) << 17));
  for (const auto& e : lb.entries) {
    ASSERT_TRUE(e.v.is_exact());
    EXPECT_LE(e.v.value(), 16);
    EXPECT_EQ(e.v.value() == 16, e.i == 4);
  }
}

TEST(Equivalence, Examples) {
  Config c3(3, 64), c2(2, 64);
  auto half = equivalence_probe(parse_scalar("rat:1/2", c3), box(64, 6));
  EXPECT_TRUE(half.agree);
  EXPECT_TRUE(half.product.positive());
  auto three = equivalence_probe(parse_scalar("int:3", c3), box(64, 6));
  EXPECT_TRUE(three.agree);
  EXPECT_TRUE(three.difference_r.has_value());
  auto lb = equivalence_probe(parse_scalar("lebras:2,4", c2), box(64, 6));
  EXPECT_TRUE(lb.agree);
  EXPECT_FALSE(lb.product.positive());
  EXPECT_FALSE(lb.difference_r.has_value());
}

TEST(Kedlaya, Examples) {
  auto c = kedlaya_identity_check(BigRational(1, 2), 1);
  EXPECT_EQ(c.lhs[1], 4);
  EXPECT_EQ(c.rhs[1], 4);
  EXPECT_TRUE(c.all_zero());
  EXPECT_TRUE(kedlaya_identity_check(BigRational(1, 2), 10).all_zero());
  auto s = kedlaya_identity_check(BigRational(7, 3), 0);
  EXPECT_EQ(s.lhs[0], BigRational(3, 7));
  EXPECT_TRUE(s.all_zero());
  EXPECT_THROW(kedlaya_identity_check(BigRational(3), 5), std::domain_error);
  EXPECT_NO_THROW(kedlaya_identity_check(BigRational(3), 2));
}

TEST(Kedlaya, RandomRationals) {
  gen::Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    BigRational lam = rng.non_pole(50, 50, 25);
    EXPECT_TRUE(kedlaya_identity_check(lam, 25).all_zero()) << to_string(lam);
  }
}

TEST(Divergence, LeBrasTable) {
  auto lb = SparsePAdic::le_bras(2, 4);
  ASSERT_EQ(divergence_depth(lb), 2u);
  std::vector<long> rs{0, 1, 8};
  auto t = lebras_divergence_check(lb, rs, 2);
  auto at = [&](long r, std::size_t j) {
    for (const auto& row : t.rows)
      if (row.r == r && row.j == j) return row.exponent;
    ADD_FAILURE() << "missing row";
    return BigInt(0);
  };
  EXPECT_EQ(at(1, 1), -12);
  EXPECT_EQ(at(8, 2), BigInt(524320) - (BigInt(1) << 32));
  EXPECT_EQ(at(0, 1), -16);
  EXPECT_TRUE(t.all_decreasing());
  EXPECT_THROW(lebras_divergence_check(lb, rs, 3), std::out_of_range);
}

TEST(Divergence, DecreasingForEveryR) {
  for (unsigned long p : {2UL, 3UL}) {
    auto lb = SparsePAdic::le_bras(p, 4);
    std::vector<long> rs;
    for (long r = 0; r <= 8; ++r) rs.push_back(r);
    auto t = lebras_divergence_check(lb, rs, divergence_depth(lb));
    EXPECT_TRUE(t.all_decreasing()) << p;
    for (const auto& row : t.rows) {
      BigInt m = *lb.partial_sum(row.j);
      EXPECT_EQ(row.exponent, row.r * m - lb.support()[row.j].value());
    }
  }
}

TEST(Evidence, TailWindow) {
  std::vector<std::optional<BigInt>> up;
  for (long i = 1; i <= 32; ++i) up.emplace_back(BigInt(i));
  EXPECT_TRUE(tail_window_passes(up, 8));
  EXPECT_FALSE(tail_window_passes(up, 40));
  up[30].reset();
  EXPECT_FALSE(tail_window_passes(up, 8));
  std::vector<std::optional<BigInt>> flat(32, BigInt(20));
  EXPECT_FALSE(tail_window_passes(flat, 8));
  std::vector<BigInt> inc{1, 2, 3, 4}, dec{4, 3, 2, 1};
  EXPECT_TRUE(tail_trend_increasing(inc));
  EXPECT_FALSE(tail_trend_increasing(dec));
}
