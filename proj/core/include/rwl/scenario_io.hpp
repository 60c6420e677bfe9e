#pragma once

// Scenario files: a record layer, an optional continuation model, an
// optional refinement class, and tagged expected results. See
// docs/scenario-format.md for the schema.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwl/continuation.hpp"
#include "rwl/record_model.hpp"

namespace rwl {

struct RefinementClassSpec {
  RichnessKind kind = RichnessKind::Saturated;
  std::string sector;
  int denominator_bound = 0;
  double grid_step = 0.25;
};

struct Expectation {
  std::string quantity;  // induced_weight | born_weight | realized_sums | left_norms
  std::string sector;
  std::vector<std::string> sectors;
  std::optional<double> value;
  std::vector<double> values;
  std::string provenance;  // published | derived | trivial
};

struct Scenario {
  std::string name;
  RecordLayer layer;
  std::optional<ContinuationModel> model;
  std::optional<RefinementClassSpec> refinement_class;
  std::vector<Expectation> expected;
};

/// Throws ParseError with line/column for malformed JSON and with a JSON
/// pointer for schema violations. `source` names the input in messages.
[[nodiscard]] Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json scenario_to_json(const Scenario& scenario);

struct ScenarioCheck {
  std::string id;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct ScenarioResult {
  std::string name;
  std::vector<ScenarioCheck> checks;

  [[nodiscard]] bool passed() const noexcept;
};

/// Sector validation, partition and stability for every refinement in the
/// model, then each expectation (1e-9 for weights and norms, 1e-12
/// quantization for realized sums).
[[nodiscard]] ScenarioResult run_scenario(const Scenario& scenario);

/// The two shipped scenarios ("spin", "worked4"), identical to the files in scenarios/.
[[nodiscard]] std::vector<std::pair<std::string, std::string_view>> builtin_scenarios();

}  // namespace rwl
