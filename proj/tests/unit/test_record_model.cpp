#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rwl/record_model.hpp"
#include "support/helpers.hpp"

using namespace rwl;
using testing_support::code_of;
using testing_support::random_sector;
using testing_support::random_vector;

TEST(RecordLayer, RejectsBadSectors) {
  RecordLayer layer(StateVector{0.6, 0.8});
  layer.add_sector("up", Sector::coordinate(2, {0}), "spin");
  EXPECT_EQ(code_of([&] { layer.add_sector("up", Sector::coordinate(2, {1})); }), ErrorCode::InvalidSector);
  EXPECT_EQ(code_of([&] { layer.add_sector("x", Sector::full(3)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { layer.add_sector("z", Sector::trivial(2)); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([&] { (void)layer.sector("missing"); }), ErrorCode::UnknownSector);
}

TEST(BinaryRefinement, RealizesRequestedNorms) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 2 + rng.index(6);
    const auto psi = random_vector(rng, dim, rng.uniform(0.1, 4.0));
    const auto sector = random_sector(rng, dim, 2 + rng.index(dim - 1));
    const double s = project(psi, sector).norm();
    const double r1 = rng.uniform(0.0, s);
    const auto ref = make_binary_refinement(sector, psi, r1);
    EXPECT_NEAR(project(psi, ref.left()).norm(), r1, 1e-9);
    EXPECT_NEAR(project(psi, ref.right()).norm(), std::sqrt(s * s - r1 * r1), 1e-9);
    EXPECT_EQ(ref.left().dim() + ref.right().dim(), sector.dim());
  }
}

TEST(BinaryRefinement, EndpointsKeepBothSidesNonTrivial) {
  const StateVector psi{0.6, 0.8, 0.0};
  const auto sector = Sector::full(3);
  for (double r1 : {0.0, 1.0}) {
    const auto ref = make_binary_refinement(sector, psi, r1);
    EXPECT_GE(ref.left().dim(), 1u);
    EXPECT_GE(ref.right().dim(), 1u);
    EXPECT_NEAR(project(psi, ref.left()).norm(), r1, 1e-12);
  }
}

TEST(BinaryRefinement, Errors) {
  const StateVector psi{0.6, 0.8};
  EXPECT_EQ(code_of([&] { (void)make_binary_refinement(Sector::full(2), psi, 1.5); }), ErrorCode::NormTooLarge);
  EXPECT_EQ(code_of([&] { (void)make_binary_refinement(Sector::coordinate(2, {0}), psi, 0.3); }),
            ErrorCode::SectorTooThin);
  const StateVector zero = StateVector::zero(2);
  EXPECT_EQ(code_of([&] { (void)make_binary_refinement(Sector::full(2), zero, 0.1); }), ErrorCode::ZeroComponent);
}

TEST(AdmissibleNorms, PerRichnessKind) {
  const StateVector psi{0.6, 0.8, 0.0};
  const auto full = Sector::full(3);
  const double h = 1.0 / std::numbers::sqrt2;

  const auto eq = admissible_left_norms({RichnessKind::EqualSplitOnly, 0, full, psi}, 0.1);
  ASSERT_EQ(eq.size(), 3u);
  EXPECT_DOUBLE_EQ(eq[0], 0.0);
  EXPECT_NEAR(eq[1], h, 1e-15);
  EXPECT_DOUBLE_EQ(eq[2], 1.0);

  const auto sat = admissible_left_norms({RichnessKind::Saturated, 0, full, psi}, 0.25);
  ASSERT_EQ(sat.size(), 5u);
  EXPECT_NEAR(sat[3], 0.75, 1e-15);

  // Reduced p/q with q <= 3: 0, 1/3, 1/2, 2/3, 1.
  const auto dense = admissible_left_norms({RichnessKind::DenseGrid, 3, full, psi}, 0.1);
  ASSERT_EQ(dense.size(), 5u);
  EXPECT_NEAR(dense[1], 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(std::is_sorted(dense.begin(), dense.end()));
}

TEST(AdmissibleNorms, EnumerationMatches) {
  const StateVector psi{0.3, 0.4, Complex(0.0, 0.5)};
  const RefinementClass cls{RichnessKind::Saturated, 0, Sector::full(3), psi};
  const auto norms = admissible_left_norms(cls, 0.2);
  const auto refs = enumerate_refinements(cls, 0.2);
  ASSERT_EQ(norms.size(), refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) EXPECT_NEAR(project(psi, refs[i].left()).norm(), norms[i], 1e-9);
}

TEST(RichnessKind, RoundTrip) {
  for (auto k : {RichnessKind::Saturated, RichnessKind::DenseGrid, RichnessKind::EqualSplitOnly}) {
    EXPECT_EQ(parse_richness_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_richness_kind("rich").has_value());
}

TEST(ValidateSector, SpinUpIsRobust) {
  RecordLayer spin(StateVector{0.6, 0.8});
  spin.add_sector("up", Sector::coordinate(2, {0}), "spin").add_sector("down", Sector::coordinate(2, {1}), "spin");
  const auto v = validate_sector(spin, "up");
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.checks.size(), 3u);
}

TEST(ValidateSector, NonOrthogonalGroupFailsDiscriminability) {
  RecordLayer layer(StateVector{0.6, 0.8});
  layer.add_sector("a", Sector::coordinate(2, {0}), "x").add_sector("b", Sector::span({StateVector{1.0, 1.0}}), "x");
  const auto v = validate_sector(layer, "a");
  EXPECT_FALSE(v.passed());
  EXPECT_EQ(v.checks.front().condition, "internal_discriminability");
  EXPECT_FALSE(v.checks.front().passed);
}

TEST(ValidateSector, DifferentGroupsMayOverlap) {
  RecordLayer layer(StateVector{0.6, 0.8});
  layer.add_sector("a", Sector::coordinate(2, {0}), "x").add_sector("b", Sector::span({StateVector{1.0, 1.0}}), "y");
  EXPECT_TRUE(validate_sector(layer, "a").passed());
}
