#pragma once

// Run reports and their JSON/CSV/SVG renderings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwl/funceq.hpp"
#include "rwl/saturation.hpp"

namespace rwl {

struct CheckResult {
  std::string id;
  /// Name of the result the check exercises, or "plumbing".
  std::string anchor;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct RunReport {
  std::string suite;
  /// Process exit status reported when this suite is the first to fail.
  int exit_code = 1;
  std::vector<CheckResult> checks;
  double wall_ms = 0.0;

  [[nodiscard]] bool passed() const noexcept;
  void add(std::string id, std::string anchor, bool passed, double residual = 0.0, std::string detail = {});
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<RunReport> suites;
  double wall_ms = 0.0;

  [[nodiscard]] bool passed() const noexcept;
  /// 0 when every suite passes, else the code of the first failing suite.
  [[nodiscard]] int exit_code() const noexcept;
};

/// Anchors a verify check may carry.
[[nodiscard]] const std::vector<std::string_view>& known_anchors();

/// Keys: seed, passed, exit_code, suites[{name, passed, exit_code, checks[{id,
/// anchor, passed, residual, detail}], wall_ms}], wall_ms. Timing fields are
/// omitted when `deterministic` is set.
[[nodiscard]] nlohmann::json to_json(const VerifyReport& report, bool deterministic);
[[nodiscard]] nlohmann::json to_json(const RunReport& report, bool deterministic);
[[nodiscard]] nlohmann::json to_json(const DensityCertificate& certificate);
[[nodiscard]] nlohmann::json to_json(const DenseExtensionReport& report);
[[nodiscard]] nlohmann::json to_json(const EquationReport& report);

/// Writes to a sibling temporary file and renames it into place.
/// Throws IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::string color = "#1f77b4";
  bool markers = false;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

/// Self-contained SVG line plot.
[[nodiscard]] std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// g against c r^2 on the given norms.
[[nodiscard]] std::string render_profile_overlay(const ProfileFunction& g, double c, const std::vector<double>& grid);
/// Worst greedy gap and its bound max w against eps_n, log-log.
[[nodiscard]] std::string render_gap_curve(const DensityCertificate& certificate);

}  // namespace rwl
