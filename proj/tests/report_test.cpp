#include <gtest/gtest.h>

#include "padx/report.hpp"

using namespace padx;

TEST(Report, TypeVerdictShape) {
  Config c(5, 16);
  auto v = classify_positive_type(parse_scalar("rat:1/5", c), {});
  Json j = to_json(v);
  for (const char* k : {"verdict", "horizon", "r", "margins", "structural", "proof_tag", "box"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["verdict"], "PositiveWitness");
  EXPECT_TRUE(j["margins"][0].is_string());
  EXPECT_EQ(j["box"]["cap"], "1048576");
}

TEST(Report, BigExponentsAreDecimalStrings) {
  Config c(2, 64);
  Scalar lam = parse_scalar("lebras:2,4", c);
  auto w = divergence_witness(lam, c, 4, 256, BigInt(1) << 20);
  Json j = to_json(w);
  EXPECT_EQ(j["verdict"], "DivergenceWitnessed");
  EXPECT_EQ(j["steps"][1]["i"], "65541");
  EXPECT_TRUE(j["steps"][1]["product_valuation"].is_string());
  EXPECT_EQ(j["box"]["r_max"], 4);

  EXPECT_EQ(to_json(ExtValuation::infinity()), "+inf");
  EXPECT_EQ(to_json(ExtValuation::lower_bound(16)), ">=16");
  EXPECT_EQ(to_json(ExtValuation::exact(BigInt(1) << 70)), "1180591620717411303424");
}

TEST(Report, ProbeIsDeterministic) {
  Config c(5, 16);
  Scalar lam = parse_scalar("rat:1/5", c);
  const std::string a = to_json(coadmissibility_probe(lam, c)).dump();
  const std::string b = to_json(coadmissibility_probe(lam, c)).dump();
  EXPECT_EQ(a, b);
  Json j = Json::parse(a);
  EXPECT_EQ(j["verdict"], "CoadmissibleEvidence");
  EXPECT_EQ(j["r_per_level"].size(), 5u);
  EXPECT_EQ(j["box"]["n_max"], 4);
  EXPECT_EQ(j["box"]["classifier"]["horizon"], 64);
}

TEST(Report, OperatorReports) {
  Config c(3, 16);
  std::vector<DensePAdic> g;
  for (long i = 0; i <= 9; ++i) g.push_back(DensePAdic::power_of_p(c, 2 * i));
  Json j = to_json(dhat_membership(OperatorElement::constant_coefficient(c, g, true), 3));
  EXPECT_EQ(j["passes_through"], 1);
  EXPECT_EQ(j["levels"].size(), 4u);
  EXPECT_EQ(to_json(level_norm(OperatorElement::derivation_power(c, 1), 2))["exponent"], "-2");
}
