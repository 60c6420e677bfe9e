#pragma once

// Subset-sum machinery behind local dense saturation: greedy approximation
// of a target squared share by grouped sub-record weights, exhaustive
// realized sums for small decompositions, and density certificates over a
// refining sequence of decompositions.

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rwl {

/// Squared-norm shares w_i = |P_{S_i} psi|^2 of an orthogonal decomposition.
class Decomposition {
 public:
  /// total = sum of weights.
  explicit Decomposition(std::vector<double> weights);
  /// Throws InconsistentTotals if |sum - total| > 1e-10.
  Decomposition(std::vector<double> weights, double total);

  static Decomposition uniform(std::size_t n, double total);

  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
  [[nodiscard]] double total() const noexcept { return total_; }
  [[nodiscard]] double max_weight() const noexcept;
  /// max_i w_i / total (0 when total is 0).
  [[nodiscard]] double eps_share() const noexcept;
  /// Each weight replaced by `parts` equal pieces.
  [[nodiscard]] Decomposition split_uniformly(std::size_t parts) const;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

struct SubsetSum {
  std::vector<std::size_t> indices;  // ascending
  double achieved = 0.0;
  double gap = 0.0;  // target - achieved
};

/// Sort descending, take each weight that still fits. Whenever target < total
/// every skipped weight exceeds the final gap, so gap < max weight.
/// Throws TargetOutOfRange unless 0 <= x <= total; NegativeValue for w < 0.
[[nodiscard]] SubsetSum subset_sum_greedy(const std::vector<double>& weights, double target);

/// Exhaustive maximal subset sum <= target (n <= 20). Cross-check oracle for
/// the greedy routine; throws TooManyWeights above 20.
[[nodiscard]] SubsetSum subset_sum_exhaustive(const std::vector<double>& weights, double target);
/// One 2^n enumeration shared by every target.
[[nodiscard]] std::vector<SubsetSum> subset_sum_exhaustive(const std::vector<double>& weights,
                                                          const std::vector<double>& targets);

inline constexpr std::size_t kMaxExhaustiveWeights = 20;
inline constexpr double kSumQuantum = 1e-12;

/// All 2^n subset sums, deduplicated on a 1e-12 grid, ascending.
[[nodiscard]] std::vector<double> realized_sums(const std::vector<double>& weights);

struct LevelCertificate {
  std::size_t pieces = 0;
  double eps_share = 0.0;
  double bound = 0.0;  // max_i w_i
  double worst_gap = 0.0;
  double worst_target = 0.0;
  /// max over targets of sqrt(x) - sqrt(achieved), the gap in norm space
  double worst_norm_gap = 0.0;
  bool valid = false;
};

struct DensityCertificate {
  double total = 0.0;
  std::vector<LevelCertificate> levels;
  std::size_t targets = 0;
  /// Every level satisfies gap < bound for every target.
  bool valid = false;
  /// Two or more levels and eps_n strictly decreasing: the decomposition
  /// sequence is refining towards density. False means density is not
  /// indicated (e.g. a dominant weight that never shrinks).
  bool converging = false;
  /// Worst gaps non-increasing level to level.
  bool gaps_monotone = false;
};

/// Gap bound is strict with 1e-12 slack on the open side.
/// Throws InconsistentTotals if level totals disagree, TargetOutOfRange for
/// targets outside [0, W].
[[nodiscard]] DensityCertificate density_certificate(const std::vector<Decomposition>& levels,
                                                     const std::vector<double>& targets);

/// {0, step W, 2 step W, ..., W}.
[[nodiscard]] std::vector<double> default_targets(double total, double step_fraction = 0.01);

/// One non-negative decimal per line; blank lines and '#' comments ignored.
/// Throws ParseError naming the offending line.
[[nodiscard]] std::vector<double> parse_weight_list(std::istream& in);

}  // namespace rwl
