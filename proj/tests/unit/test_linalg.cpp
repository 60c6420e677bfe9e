#include <gtest/gtest.h>

#include <numbers>

#include "rwl/error.hpp"
#include "rwl/linalg.hpp"
#include "rwl/random.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace rwl;

using testing_support::code_of;
using testing_support::random_vector;

namespace {

oracle::cvec to_cvec(const StateVector& v) { return {v.amplitudes().begin(), v.amplitudes().end()}; }

}  // namespace

TEST(Orthonormalize, TwoVectorExample) {
  const auto b = orthonormalize({StateVector{1.0, 1.0}, StateVector{1.0, 0.0}});
  ASSERT_EQ(b.size(), 2u);
  const double h = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(b[0][0].real(), h, 1e-12);
  EXPECT_NEAR(b[0][1].real(), h, 1e-12);
  EXPECT_NEAR(b[1][0].real(), h, 1e-12);
  EXPECT_NEAR(b[1][1].real(), -h, 1e-12);
}

TEST(Orthonormalize, DropsDependentVectors) {
  const auto b = orthonormalize({StateVector{1.0, 2.0, 0.0}, StateVector{2.0, 4.0, 0.0}, StateVector{0.0, 0.0, 3.0}});
  EXPECT_EQ(b.size(), 2u);
}

TEST(Orthonormalize, AllZeroIsDegenerate) {
  EXPECT_EQ(code_of([] { (void)orthonormalize({StateVector::zero(3), StateVector::zero(3)}); }),
            ErrorCode::DegenerateInput);
}

TEST(Orthonormalize, AgreesWithClassicalGramSchmidt) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 3 + rng.index(5);
    const std::size_t k = 1 + rng.index(dim);
    std::vector<StateVector> vs;
    std::vector<oracle::cvec> raw;
    for (std::size_t i = 0; i < k; ++i) {
      vs.push_back(random_vector(rng, dim));
      raw.push_back(to_cvec(vs.back()));
    }
    const auto mine = orthonormalize(vs);
    const auto ref = oracle::gram_schmidt(raw);
    ASSERT_EQ(mine.size(), ref.size());
    // Same subspace: each reference vector has unit projected norm onto ours.
    const auto sector = Sector::from_orthonormal(mine, dim);
    for (const auto& e : ref) EXPECT_NEAR(project(StateVector(e), sector).norm_squared(), 1.0, 1e-10);
    EXPECT_LE(sector.orthonormality_residual(), 1e-12);
  }
}

TEST(Sector, CoordinateRejectsRepeatsAndRange) {
  EXPECT_EQ(code_of([] { (void)Sector::coordinate(3, {0, 0}); }), ErrorCode::InvalidSector);
  EXPECT_THROW((void)Sector::coordinate(3, {3}), Error);
}

TEST(Sector, FromOrthonormalValidates) {
  EXPECT_EQ(code_of([] { (void)Sector::from_orthonormal({StateVector{1.0, 1.0}}, 2); }), ErrorCode::InvalidSector);
  EXPECT_EQ(code_of([] { (void)Sector::from_orthonormal({StateVector{1.0, 0.0, 0.0}}, 2); }),
            ErrorCode::DimensionMismatch);
}

TEST(Project, MatchesDirectInnerProducts) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.index(6);
    std::vector<StateVector> vs;
    for (std::size_t i = 0; i < 1 + rng.index(dim); ++i) vs.push_back(random_vector(rng, dim));
    const auto sector = Sector::span(vs);
    const auto psi = random_vector(rng, dim);
    std::vector<oracle::cvec> basis;
    for (const auto& e : sector.basis()) basis.push_back(to_cvec(e));
    EXPECT_NEAR(project(psi, sector).norm_squared(), oracle::projected_norm_sq(basis, to_cvec(psi)), 1e-12);
    const auto once = project(psi, sector);
    EXPECT_LE((project(once, sector) - once).norm(), 1e-12);
  }
}

TEST(Project, DimensionMismatch) {
  EXPECT_EQ(code_of([] { (void)project(StateVector{1.0, 0.0}, Sector::full(3)); }), ErrorCode::DimensionMismatch);
}

TEST(Inner, ConjugateLinearInFirstArgument) {
  const StateVector a{Complex(0.0, 1.0)};
  const StateVector b{Complex(1.0, 0.0)};
  EXPECT_EQ(inner(a, b), Complex(0.0, -1.0));
}

TEST(Refinement, AcceptsOrthogonalSplit) {
  const auto r = Refinement::make(Sector::full(3), Sector::coordinate(3, {0}), Sector::coordinate(3, {1, 2}));
  EXPECT_EQ(r.left().dim() + r.right().dim(), 3u);
}

TEST(Refinement, RejectsOverlapAndMissingDirections) {
  EXPECT_EQ(code_of([] {
              (void)Refinement::make(Sector::full(2), Sector::coordinate(2, {0}),
                                     Sector::span({StateVector{1.0, 1.0}}));
            }),
            ErrorCode::InvalidRefinement);
  EXPECT_EQ(code_of([] {
              (void)Refinement::make(Sector::full(3), Sector::coordinate(3, {0}), Sector::coordinate(3, {1}));
            }),
            ErrorCode::InvalidRefinement);
}

TEST(OrthogonalComplement, CompletesParent) {
  Rng rng(8);
  const auto parent = Sector::full(5);
  const auto sub = Sector::span({random_vector(rng, 5), random_vector(rng, 5)});
  const auto comp = orthogonal_complement(parent, sub);
  EXPECT_EQ(comp.dim(), 3u);
  EXPECT_LE(max_overlap(sub, comp), 1e-12);
}

TEST(Pythagoras, HoldsOnRandomSplits) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng.index(6);
    const auto psi = random_vector(rng, dim);
    std::vector<StateVector> vs;
    for (std::size_t i = 0; i < 2 + rng.index(dim - 1); ++i) vs.push_back(random_vector(rng, dim));
    const auto parent = Sector::span(vs);
    if (parent.dim() < 2) continue;
    const auto left = Sector::from_orthonormal({parent.basis()[0]}, dim);
    const auto r = Refinement::make(parent, left, orthogonal_complement(parent, left));
    const auto p = pythagoras_check(psi, r);
    EXPECT_LE(std::abs(p.residual()), 1e-9 * std::max(1.0, psi.norm_squared()));
  }
}
