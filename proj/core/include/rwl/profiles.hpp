#pragma once

// Binary refinement profile spaces, profile equivalence, and the
// norm-reduced profile function g with W = g(|P_R psi|).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rwl/record_model.hpp"

namespace rwl {

/// Profile coordinates are kept on a 1e-9 grid so set equality is decidable.
inline constexpr double kProfileQuantum = 1e-9;

[[nodiscard]] std::int64_t quantize(double x, double quantum = kProfileQuantum);

struct ProfilePoint {
  std::int64_t q1 = 0;
  std::int64_t q2 = 0;

  static ProfilePoint from_norms(double r1, double r2);
  [[nodiscard]] double r1() const noexcept { return static_cast<double>(q1) * kProfileQuantum; }
  [[nodiscard]] double r2() const noexcept { return static_cast<double>(q2) * kProfileQuantum; }

  auto operator<=>(const ProfilePoint&) const = default;
};

struct ProfileSpace {
  std::set<ProfilePoint> points;
  double total_norm = 0.0;

  [[nodiscard]] bool contains_self_profile() const;
  /// Largest |r1^2 + r2^2 - s^2| over the stored points.
  [[nodiscard]] double max_pythagoras_residual() const;
};

/// {(|P_left psi|, |P_right psi|)} over enumerate_refinements(cls), plus (s, 0).
[[nodiscard]] ProfileSpace profile_space(const RefinementClass& cls, double grid_step);

/// Exact quantized-set equality.
[[nodiscard]] bool profiles_equal(const ProfileSpace& a, const ProfileSpace& b);

struct ClassificationViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  double norm_first = 0.0;
  double norm_second = 0.0;
  bool profiles_equal = false;
};

struct ClassificationReport {
  std::size_t pairs_checked = 0;
  std::size_t equivalent_pairs = 0;
  std::vector<ClassificationViolation> violations;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// For every pair: profiles_equal <=> |s - s'| <= 1e-9. All classes must be
/// Saturated (PreconditionNotMet otherwise); they share `grid_step`.
[[nodiscard]] ClassificationReport check_norm_classification(const std::vector<RefinementClass>& classes,
                                                             double grid_step);

/// g : R>=0 -> R>=0, either in closed form or as exact samples on the
/// quantized norm grid. Sampled functions never interpolate.
class ProfileFunction {
 public:
  enum class Provenance { Extracted, Quadratic, Counterexample, ClosedForm };

  static ProfileFunction quadratic(double c);
  /// s^2 (1 + eps sin(4 pi log2 s)), 0 at s = 0.
  static ProfileFunction counterexample(double epsilon);
  static ProfileFunction closed_form(std::string label, std::function<double(double)> g);
  /// Samples keyed by quantized norm. Values must be >= 0.
  static ProfileFunction sampled(std::map<std::int64_t, double> samples,
                                 Provenance provenance = Provenance::Extracted);

  [[nodiscard]] bool is_closed_form() const noexcept { return static_cast<bool>(closed_); }
  [[nodiscard]] bool defined_at(double r) const;
  /// Throws MissingSample when a sampled function has no exact sample at r.
  [[nodiscard]] double operator()(double r) const;
  [[nodiscard]] std::optional<double> try_eval(double r) const;

  [[nodiscard]] Provenance provenance() const noexcept { return provenance_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  /// Quadratic coefficient or epsilon, when the provenance has one.
  [[nodiscard]] std::optional<double> parameter() const noexcept { return parameter_; }
  [[nodiscard]] const std::map<std::int64_t, double>& samples() const noexcept { return samples_; }

  /// Sampled copy of this function at the given norms.
  [[nodiscard]] ProfileFunction sampled_on(const std::vector<double>& grid) const;
  /// Pointwise scaling by lambda >= 0; keeps the representation.
  [[nodiscard]] ProfileFunction scaled(double lambda) const;

 private:
  ProfileFunction() = default;

  std::function<double(double)> closed_;
  std::map<std::int64_t, double> samples_;
  Provenance provenance_ = Provenance::ClosedForm;
  std::string label_;
  std::optional<double> parameter_;
};

std::string_view to_string(ProfileFunction::Provenance p) noexcept;

/// Builds g from (|P_R psi|, W) observations. Throws
/// InternalEquivalenceViolation when two observations share a quantized norm
/// but differ in weight by more than 1e-9 * max(1, W).
[[nodiscard]] ProfileFunction extract_profile_function(const std::vector<std::pair<double, double>>& assignments);

/// Columns `r,g_r`, one row per sample (sampled functions only).
void write_profile_csv(const ProfileFunction& g, std::ostream& out);

}  // namespace rwl
