#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rwl/scenario_io.hpp"
#include "rwl/scenarios.hpp"
#include "support/helpers.hpp"

using namespace rwl;
using testing_support::code_of;

TEST(Spin, BornWeights) {
  const auto r = spin_demo(0.6, Complex(0.0, 0.8));
  EXPECT_NEAR(r.up, 0.36, 1e-12);
  EXPECT_NEAR(r.down, 0.64, 1e-12);
  EXPECT_NEAR(r.total, 1.0, 1e-12);
  EXPECT_TRUE(r.sectors_valid && r.partition_ok && r.stability_ok);
}

TEST(Spin, GlobalPhaseInvariance) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform(0.0, std::numbers::pi / 2);
    const Complex a = std::polar(std::cos(theta), rng.uniform(0.0, 6.28));
    const Complex b = std::polar(std::sin(theta), rng.uniform(0.0, 6.28));
    const Complex phase = std::polar(1.0, rng.uniform(0.0, 6.28));
    const auto x = spin_demo(a, b);
    const auto y = spin_demo(phase * a, phase * b);
    EXPECT_NEAR(x.up, std::norm(a), 1e-10);
    EXPECT_NEAR(x.up, y.up, 1e-12);
    EXPECT_NEAR(x.up + x.down, 1.0, 1e-10);
  }
}

TEST(Spin, RequiresNormalizedState) {
  EXPECT_EQ(code_of([] { (void)spin_demo(0.6, 0.6); }), ErrorCode::NotNormalized);
}

TEST(NormalizedWeights, Errors) {
  const StateVector psi{0.6, 0.8};
  EXPECT_EQ(code_of([&] { (void)normalized_weights(StateVector{1.0, 1.0}, {Sector::full(2)}); }),
            ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([&] { (void)normalized_weights(psi, {Sector::full(2), Sector::coordinate(2, {0})}); }),
            ErrorCode::InvalidSector);
  EXPECT_EQ(code_of([&] { (void)normalized_weights(psi, {Sector::coordinate(2, {0})}); }),
            ErrorCode::IncompleteDecomposition);
}

TEST(CoarseRecord, ForcedWorkedWeights) {
  const auto rep = coarse_record_demo({4, 7, SubrecordProfile::Random, std::vector<double>{0.4, 0.3, 0.2, 0.1}});
  ASSERT_TRUE(rep.realized_sums.has_value());
  EXPECT_EQ(rep.realized_sums->size(), 11u);
  EXPECT_TRUE(rep.passed());
}

TEST(CoarseRecord, RandomSharesRecoverQuadratic) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto rep = coarse_record_demo({16, seed, SubrecordProfile::Random, std::nullopt});
    EXPECT_TRUE(rep.passed()) << seed;
    EXPECT_NEAR(rep.recovered_c, 1.0, 1e-6);
    EXPECT_EQ(rep.certificate.levels.size(), 3u);
  }
}

TEST(CoarseRecord, SizeLimits) {
  EXPECT_EQ(code_of([] { (void)coarse_record_demo({3, 1, SubrecordProfile::Uniform, std::nullopt}); }),
            ErrorCode::OutOfRange);
}

TEST(DenseSaturation, Denominator128) {
  const auto demo = dense_saturation_demo(128);
  EXPECT_TRUE(demo.passed());
  ASSERT_TRUE(demo.quadratic.certificate);
  EXPECT_NEAR(demo.quadratic.certificate->c, 1.0, 1e-9);
  EXPECT_GT(demo.control_failures, 0u);
  EXPECT_TRUE(demo.control_fails_only_inside_window);
}

TEST(DenseSaturation, JumpControlShape) {
  const auto g = jump_control_profile();
  EXPECT_DOUBLE_EQ(g(0.4), 0.16);
  EXPECT_DOUBLE_EQ(g(0.5), 0.35);
  EXPECT_DOUBLE_EQ(g(0.502), 0.502 * 0.502);
}

TEST(ScenarioIo, BuiltinsPass) {
  for (const auto& [name, text] : builtin_scenarios()) {
    const auto result = run_scenario(parse_scenario(text, name));
    for (const auto& c : result.checks) EXPECT_TRUE(c.passed) << name << ": " << c.id << " " << c.detail;
  }
}

TEST(ScenarioIo, ShippedFilesMatchBuiltins) {
  for (const auto& [name, text] : builtin_scenarios()) {
    const auto shipped = load_scenario(std::string(RWL_SOURCE_DIR) + "/scenarios/" + name + ".json");
    EXPECT_EQ(scenario_to_json(shipped), scenario_to_json(parse_scenario(text, name))) << name;
  }
}

TEST(ScenarioIo, JsonRoundTrip) {
  for (const auto& [name, text] : builtin_scenarios()) {
    const auto first = parse_scenario(text, name);
    const auto again = parse_scenario(scenario_to_json(first).dump(), name);
    EXPECT_EQ(scenario_to_json(first), scenario_to_json(again));
  }
}

namespace {

std::string parse_error(std::string_view text) {
  try {
    (void)parse_scenario(text, "t.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "parsed: " << text;
  return {};
}

}  // namespace

TEST(ScenarioIo, MalformedJsonReportsLineAndColumn) {
  const auto msg = parse_error("{\n  \"name\": \"x\",\n  \"ambient_dim\": ]\n}");
  EXPECT_NE(msg.find("t.json:3:"), std::string::npos) << msg;
}

TEST(ScenarioIo, FieldErrorsNameThePointer) {
  const auto missing = parse_error(R"({"name": "x", "ambient_dim": 2})");
  EXPECT_NE(missing.find("/state"), std::string::npos) << missing;
  const auto wrong = parse_error(
      R"({"name": "x", "ambient_dim": 2, "state": [1, 0], "sectors": [{"name": "a", "basis_indices": [5]}]})");
  EXPECT_NE(wrong.find("/sectors/0"), std::string::npos) << wrong;
}

TEST(ScenarioIo, FailingExpectationIsReported) {
  auto doc = scenario_to_json(parse_scenario(builtin_scenarios().front().second, "spin"));
  for (auto& e : doc["expected"]) {
    if (e["quantity"] == "induced_weight" && e["sector"] == "up") e["value"] = 0.5;
  }
  const auto result = run_scenario(parse_scenario(doc.dump(), "edited"));
  EXPECT_FALSE(result.passed());
}
