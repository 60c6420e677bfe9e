#pragma once

// Record layers, robust record sectors, and constructive binary refinements
// with prescribed projected norms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwl/linalg.hpp"

namespace rwl {

struct NamedSector {
  std::string name;
  Sector sector;
  /// Sectors sharing a group are mutually exclusive alternatives and must be orthogonal.
  std::string group = "default";
};

/// Ambient space, a state, and named record sectors.
///
/// Pairwise orthogonality inside an exclusivity group is *not* enforced on
/// insertion; validate_sector reports it so that malformed layers can be
/// loaded and diagnosed.
class RecordLayer {
 public:
  explicit RecordLayer(StateVector state);

  /// Throws DegenerateInput for a zero-dimensional sector, DimensionMismatch
  /// for a wrong ambient dimension, InvalidSector for a duplicate name.
  RecordLayer& add_sector(std::string name, Sector sector, std::string group = "default");

  [[nodiscard]] std::size_t ambient_dim() const noexcept { return state_.dim(); }
  [[nodiscard]] const StateVector& state() const noexcept { return state_; }
  [[nodiscard]] const std::vector<NamedSector>& sectors() const noexcept { return sectors_; }
  /// Throws UnknownSector.
  [[nodiscard]] const NamedSector& sector(const std::string& name) const;

 private:
  StateVector state_;
  std::vector<NamedSector> sectors_;
};

enum class RichnessKind { Saturated, DenseGrid, EqualSplitOnly };

std::string_view to_string(RichnessKind kind) noexcept;
std::optional<RichnessKind> parse_richness_kind(std::string_view text) noexcept;

/// Declares which binary refinements of (state, sector) count as admissible.
struct RefinementClass {
  RichnessKind kind = RichnessKind::Saturated;
  /// Only used by DenseGrid: left norms s*p/q for 0 <= p <= q <= bound.
  int denominator_bound = 0;
  Sector sector;
  StateVector state;

  /// s = |P_R psi|.
  [[nodiscard]] double component_norm() const;
};

/// Admissible binary refinement realizing |P_left psi| = r1 and
/// |P_right psi| = sqrt(s^2 - r1^2).
///
/// The left sector is span{u} with u = cos(a) e1 + sin(a) e_perp, where
/// e1 = P_R psi / s, e_perp is a unit vector of R orthogonal to e1, and
/// cos(a) = r1 / s. The right sector is the complement of left inside R.
/// Degenerate splits keep a genuine zero-projection sector when dim R >= 2.
[[nodiscard]] Refinement make_binary_refinement(const Sector& sector, const StateVector& state, double r1);

/// Saturated: r1 in {0, h, 2h, ...} capped by s (and s itself).
/// DenseGrid: r1 = s*p/q over reduced fractions, q <= denominator_bound.
/// EqualSplitOnly: r1 in {0, s/sqrt(2), s}.
/// Results are ordered by increasing left norm.
[[nodiscard]] std::vector<Refinement> enumerate_refinements(const RefinementClass& cls, double grid_step);

/// The left norms enumerate_refinements would realize, without building sectors.
[[nodiscard]] std::vector<double> admissible_left_norms(const RefinementClass& cls, double grid_step);

struct ConditionCheck {
  std::string condition;
  bool passed = false;
  std::string detail;
};

struct SectorValidation {
  std::string sector;
  std::vector<ConditionCheck> checks;

  [[nodiscard]] bool passed() const noexcept;
};

/// Numeric surrogates for a robust record sector:
///  - discriminability: orthogonal (1e-10) to every other sector of its group;
///  - persistence: for `perturbations` random d with |d| <= 1e-3,
///    | |P(psi+d)| - |P psi| | <= |d|;
///  - refinement closure: dim >= 1 and an orthonormal basis.
[[nodiscard]] SectorValidation validate_sector(const RecordLayer& layer, const std::string& name,
                                               std::uint64_t seed = 0x5eed, int perturbations = 100);

}  // namespace rwl
