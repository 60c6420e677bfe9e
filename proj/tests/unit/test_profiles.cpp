#include <gtest/gtest.h>

#include <sstream>

#include "rwl/profiles.hpp"
#include "support/helpers.hpp"

using namespace rwl;
using testing_support::code_of;
using testing_support::random_sector;
using testing_support::random_vector;

TEST(Quantize, RoundsToQuantum) {
  EXPECT_EQ(quantize(0.5), 500000000);
  EXPECT_EQ(quantize(0.5 + 4e-10), quantize(0.5));
  EXPECT_NE(quantize(0.5 + 6e-10), quantize(0.5));
}

TEST(ProfileSpace, ContainsSelfProfileAndSatisfiesPythagoras) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    const auto psi = random_vector(rng, 4, 2.0);
    const RefinementClass cls{RichnessKind::Saturated, 0, random_sector(rng, 4, 3), psi};
    const auto space = profile_space(cls, 0.1);
    EXPECT_TRUE(space.contains_self_profile());
    // Stored norms are quantized, so the identity holds to about 2 s * quantum.
    EXPECT_LE(space.max_pythagoras_residual(), 2.0 * space.total_norm * kProfileQuantum + 1e-12);
  }
}

TEST(ProfileSpace, EqualNormsGiveEqualProfiles) {
  const StateVector a{0.6, 0.8, 0.0};
  const StateVector b{0.0, Complex(0.0, 1.0)};
  const auto pa = profile_space({RichnessKind::Saturated, 0, Sector::full(3), a}, 0.1);
  const auto pb = profile_space({RichnessKind::Saturated, 0, Sector::full(2), b}, 0.1);
  EXPECT_TRUE(profiles_equal(pa, pb));
  const auto pc = profile_space({RichnessKind::Saturated, 0, Sector::coordinate(3, {0, 2}), a}, 0.1);
  EXPECT_FALSE(profiles_equal(pa, pc));
}

TEST(NormClassification, FourSectorExample) {
  std::vector<RefinementClass> classes;
  for (double s : {0.3, 0.7, 0.7, 1.2}) classes.push_back({RichnessKind::Saturated, 0, Sector::full(2), StateVector{s, 0.0}});
  const auto report = check_norm_classification(classes, 0.1);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.pairs_checked, 6u);
  EXPECT_EQ(report.equivalent_pairs, 1u);
}

TEST(NormClassification, RequiresSaturatedClasses) {
  std::vector<RefinementClass> classes{{RichnessKind::EqualSplitOnly, 0, Sector::full(2), StateVector{1.0, 0.0}},
                                       {RichnessKind::Saturated, 0, Sector::full(2), StateVector{1.0, 0.0}}};
  EXPECT_EQ(code_of([&] { (void)check_norm_classification(classes, 0.1); }), ErrorCode::PreconditionNotMet);
}

TEST(ProfileFunction, ClosedForms) {
  EXPECT_DOUBLE_EQ(ProfileFunction::quadratic(3.0)(2.0), 12.0);
  EXPECT_EQ(ProfileFunction::counterexample(0.5)(0.0), 0.0);
  EXPECT_EQ(ProfileFunction::counterexample(0.5).parameter(), 0.5);
  EXPECT_DOUBLE_EQ(ProfileFunction::quadratic(2.0).scaled(1.5)(1.0), 3.0);
}

TEST(ProfileFunction, SampledNeverInterpolates) {
  const auto g = ProfileFunction::quadratic(1.0).sampled_on({0.0, 0.5, 1.0});
  EXPECT_FALSE(g.is_closed_form());
  EXPECT_DOUBLE_EQ(g(0.5), 0.25);
  EXPECT_FALSE(g.try_eval(0.75).has_value());
  EXPECT_EQ(code_of([&] { (void)g(0.75); }), ErrorCode::MissingSample);
}

TEST(ExtractProfile, BuildsFromObservations) {
  const auto g = extract_profile_function({{0.5, 0.25}, {0.5, 0.25 + 1e-12}, {1.0, 1.0}});
  EXPECT_EQ(g.samples().size(), 2u);
  EXPECT_EQ(g.provenance(), ProfileFunction::Provenance::Extracted);
  EXPECT_DOUBLE_EQ(g(1.0), 1.0);
}

TEST(ExtractProfile, RejectsNormDependentViolation) {
  EXPECT_EQ(code_of([] { (void)extract_profile_function({{0.5, 0.25}, {0.5, 0.30}}); }),
            ErrorCode::InternalEquivalenceViolation);
}

TEST(ExtractProfile, RejectsNegativeWeights) {
  EXPECT_TRUE(code_of([] { (void)extract_profile_function({{0.5, -0.25}}); }).has_value());
}

TEST(ProfileCsv, HeaderAndRows) {
  std::ostringstream out;
  write_profile_csv(ProfileFunction::quadratic(1.0).sampled_on({0.0, 0.5}), out);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, 6), "r,g_r\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
