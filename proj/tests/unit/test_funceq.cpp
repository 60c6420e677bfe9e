#include <gtest/gtest.h>

#include <cmath>

#include "rwl/funceq.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace rwl;
using testing_support::code_of;

namespace {

const std::vector<double>& grid64() {
  static const auto g = uniform_grid(4.0, 1.0 / 64.0);
  return g;
}

double max_residual(const ProfileFunction& g) {
  return check_functional_equation(g, compatible_pairs(g, grid64())).max_residual;
}

}  // namespace

TEST(Counterexample, MatchesHighPrecisionOracle) {
  EXPECT_NEAR(counterexample_g(0.5, 0.6), oracle::frozen::g_half_at_0_6, 1e-14);
  EXPECT_NEAR(counterexample_g(0.5, 0.8), oracle::frozen::g_half_at_0_8, 1e-14);
  EXPECT_DOUBLE_EQ(counterexample_g(0.5, 1.0), 1.0);
  EXPECT_EQ(counterexample_g(0.5, 0.0), 0.0);
  const auto g = ProfileFunction::counterexample(0.5);
  EXPECT_NEAR(g(1.0) - g(0.6) - g(0.8), oracle::frozen::violation_eps_half, 1e-14);
  const auto q = ProfileFunction::counterexample(0.25);
  EXPECT_NEAR(q(1.0) - q(0.6) - q(0.8), oracle::frozen::violation_eps_quarter, 1e-14);
}

TEST(Counterexample, AgreesWithLongDoubleEvaluation) {
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const double s = rng.uniform(1e-3, 10.0);
    const double eps = rng.uniform(0.01, 0.99);
    EXPECT_NEAR(counterexample_g(eps, s), static_cast<double>(oracle::g_eps(eps, s)), 1e-12 * std::max(1.0, s * s));
  }
}

TEST(Counterexample, EpsilonRange) {
  for (double eps : {0.0, 1.0, -0.5, 2.0}) {
    EXPECT_EQ(code_of([&] { (void)counterexample_g(eps, 1.0); }), ErrorCode::EpsilonOutOfRange) << eps;
  }
}

TEST(Counterexample, EqualSplitHolds) {
  Rng rng(1);
  std::vector<double> s(10000);
  for (auto& x : s) x = 10.0 * (1.0 - rng.uniform());
  const auto rep = check_equal_split_relation(ProfileFunction::counterexample(0.5), s);
  EXPECT_EQ(rep.samples, 10000u);
  EXPECT_LE(rep.max_residual, 1e-12);
}

TEST(FunctionalEquation, QuadraticsPass) {
  for (double c : {0.0, 0.5, 1.0, 3.0}) EXPECT_LE(max_residual(ProfileFunction::quadratic(c)), 1e-12) << c;
}

TEST(FunctionalEquation, NonQuadraticResidualsMatchOracle) {
  using namespace oracle::frozen;
  EXPECT_NEAR(max_residual(ProfileFunction::closed_form("r", [](double r) { return r; })), max_residual_r, 1e-8);
  EXPECT_NEAR(max_residual(ProfileFunction::closed_form("r3", [](double r) { return r * r * r; })),
              max_residual_r_cubed, 1e-8);
  EXPECT_NEAR(max_residual(ProfileFunction::counterexample(0.25)), max_residual_g_quarter, 1e-8);
  EXPECT_NEAR(max_residual(ProfileFunction::counterexample(0.5)), max_residual_g_half, 1e-8);
}

TEST(FunctionalEquation, CompatiblePairsStayOnGrid) {
  const auto g = ProfileFunction::quadratic(1.0).sampled_on(grid64());
  const auto pairs = compatible_pairs(g, grid64());
  ASSERT_FALSE(pairs.empty());
  for (const auto& p : pairs) {
    EXPECT_LE(p.first, p.second);
    EXPECT_TRUE(g.defined_at(std::hypot(p.first, p.second)));
  }
  // The closed form accepts every pair with hypot <= 4; the sampled copy only
  // those landing on the grid (e.g. 3-4-5 multiples).
  EXPECT_LT(pairs.size(), compatible_pairs(ProfileFunction::quadratic(1.0), grid64()).size());
}

TEST(Certify, RecoversQuadraticCoefficient) {
  for (double c : {0.0, 0.5, 1.0, 3.0}) {
    const auto cert = certify_quadratic(ProfileFunction::quadratic(c), grid64(), 1e-12);
    EXPECT_TRUE(cert.certified);
    EXPECT_NEAR(cert.c, c, 1e-12);
  }
}

TEST(Certify, NotApplicableToNonSolutions) {
  EXPECT_EQ(code_of([] { (void)certify_quadratic(ProfileFunction::counterexample(0.5), grid64(), 1e-9); }),
            ErrorCode::PreconditionNotMet);
}

TEST(Cauchy, LinearTableGivesSlope) {
  std::map<Rational, double> f;
  for (const auto& q : rational_grid(64, 2)) f[q] = 2.5 * q.value();
  const auto rep = cauchy_linear_check(f, {{0.3, 0.75}, {1.7, 4.25}});
  EXPECT_DOUBLE_EQ(rep.c, 2.5);
  EXPECT_LE(rep.max_deviation, 1e-10);
  EXPECT_TRUE(rep.linear());
  for (const auto& p : rep.probes) EXPECT_EQ(p.contained, true);
}

TEST(Cauchy, ProbeOutsideBracketIsFlagged) {
  std::map<Rational, double> f;
  for (const auto& q : rational_grid(8, 2)) f[q] = q.value();
  const auto rep = cauchy_linear_check(f, {{0.3, 0.9}});
  EXPECT_EQ(rep.probes.front().contained, false);
}

TEST(Cauchy, Errors) {
  std::map<Rational, double> f;
  for (const auto& q : rational_grid(16, 1)) f[q] = q.value() * q.value();
  EXPECT_EQ(code_of([&] { (void)cauchy_linear_check(f, {}); }), ErrorCode::AdditivityViolation);
  std::map<Rational, double> no_one{{Rational::make(1, 2), 0.5}};
  EXPECT_EQ(code_of([&] { (void)cauchy_linear_check(no_one, {}); }), ErrorCode::MissingSample);
  std::map<Rational, double> negative{{Rational::make(1, 1), -1.0}};
  EXPECT_EQ(code_of([&] { (void)cauchy_linear_check(negative, {}); }), ErrorCode::NegativeValue);
}

TEST(Rational, Reduces) {
  const auto r = Rational::make(6, 8);
  EXPECT_EQ(r.p, 3);
  EXPECT_EQ(r.q, 4);
  EXPECT_EQ(Rational::make(2, 4), Rational::make(1, 2));
}

TEST(RelationSet, ValidatesPythagoreanTriples) {
  RelationSet set;
  set.add({5.0, 3.0, 4.0});
  EXPECT_EQ(set.size(), 1u);
  EXPECT_EQ(code_of([&] { set.add({5.0, 3.0, 3.0}); }), ErrorCode::PreconditionNotMet);
}

TEST(DenseExtension, QuadraticPasses) {
  const auto relations = RelationSet::rational({0.5, 1.0}, 64);
  const auto rep = dense_extension_check(ProfileFunction::quadratic(2.0), relations, 0.05, 2.0, {{0.3, 0.7}});
  EXPECT_TRUE(rep.passed());
  ASSERT_TRUE(rep.certificate);
  EXPECT_NEAR(rep.certificate->c, 2.0, 1e-12);
}

TEST(DenseExtension, SparseRelationsAreRejected) {
  const auto relations = RelationSet::equal_split({1.0});
  EXPECT_EQ(code_of([&] { (void)dense_extension_check(ProfileFunction::quadratic(1.0), relations, 0.05, 1.0, {}); }),
            ErrorCode::DensityGapTooLarge);
}

TEST(DenseExtension, ViolatedRelation) {
  const auto relations = RelationSet::rational({1.0}, 32);
  const auto g = ProfileFunction::closed_form("r", [](double r) { return r; });
  EXPECT_EQ(code_of([&] { (void)dense_extension_check(g, relations, 0.05, 1.0, {}); }), ErrorCode::RelationViolated);
}

TEST(DenseExtension, ProbeNeedsRelationFamily) {
  const auto relations = RelationSet::rational({1.0}, 32);
  EXPECT_EQ(code_of([&] {
              (void)dense_extension_check(ProfileFunction::quadratic(1.0), relations, 0.05, 1.0, {{0.5, 0.7}});
            }),
            ErrorCode::PreconditionNotMet);
}
