#pragma once

// Finite semantics for continuation bundles: a binary refinement tree of
// sector identifiers, continuations attached to leaves, the atomic bundle
// valuation, induced weights, and the partition / stability checks.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rwl/random.hpp"

namespace rwl {

struct Continuation {
  std::string id;
  std::string realized_sector;
  double weight = 0.0;
};

using Bundle = std::set<std::string>;

class ContinuationModel {
 public:
  struct Node {
    std::string id;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };

  struct Split {
    std::string parent;
    std::string left;
    std::string right;
  };

  explicit ContinuationModel(std::string root_id);

  /// Splits a leaf into two children. The leaf must not carry continuations.
  ContinuationModel& refine(const std::string& leaf, std::string left, std::string right);
  /// Continuations attach to leaves only; ids are unique; weight >= 0.
  ContinuationModel& attach(Continuation continuation);

  /// Builds a model without the leaf-only and unique-id rules, so that
  /// partition violations can be represented. Unknown sectors and negative
  /// weights are still rejected.
  static ContinuationModel assemble_unchecked(std::string root_id, const std::vector<Split>& splits,
                                              std::vector<Continuation> continuations);

  [[nodiscard]] const std::string& root() const noexcept { return nodes_.front().id; }
  [[nodiscard]] bool has_sector(const std::string& id) const noexcept { return index_.contains(id); }
  [[nodiscard]] bool is_leaf(const std::string& id) const;
  [[nodiscard]] const Node& node(const std::string& id) const;
  [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<Continuation>& continuations() const noexcept { return continuations_; }
  /// Sector ids that have been split, in creation order.
  [[nodiscard]] std::vector<std::string> refined_sectors() const;
  [[nodiscard]] std::vector<std::string> leaves() const;
  [[nodiscard]] std::size_t depth() const;

  /// Continuations realized in `sector` or any descendant. Throws UnknownSector.
  [[nodiscard]] Bundle bundle_of(const std::string& sector) const;

 private:
  std::size_t index_of(const std::string& id) const;
  bool within(std::size_t node, std::size_t ancestor) const;
  void add_child(std::size_t parent, std::string id);

  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<Continuation> continuations_;
};

/// Atomic extensive valuation: mu(B) is the sum of member atoms.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::map<std::string, double> atoms);
  /// Atoms taken from the continuation weights (first occurrence of an id wins).
  static Valuation from_model(const ContinuationModel& model);

  /// Throws OutOfRange for an id without an atom.
  [[nodiscard]] double measure(const Bundle& bundle) const;
  [[nodiscard]] const std::map<std::string, double>& atoms() const noexcept { return atoms_; }

 private:
  std::map<std::string, double> atoms_;
};

/// Sector id -> induced weight.
using WeightAssignment = std::map<std::string, double>;

/// W(R) = mu(C(R)).
[[nodiscard]] double induced_weight(const ContinuationModel& model, const Valuation& mu, const std::string& sector);
[[nodiscard]] WeightAssignment induced_weights(const ContinuationModel& model, const Valuation& mu);

struct PartitionVerdict {
  std::string sector;
  bool disjoint = false;
  bool covered = false;
  /// Ids in both child bundles.
  std::vector<std::string> shared;
  /// Ids in the parent bundle but in neither child bundle.
  std::vector<std::string> uncovered;

  [[nodiscard]] bool passed() const noexcept { return disjoint && covered; }
};

/// C(R) = C(R1) disjoint-union C(R2), as exact set identities.
/// Throws MalformedTree if `sector` does not have exactly two children.
[[nodiscard]] PartitionVerdict check_partition(const ContinuationModel& model, const std::string& sector);

struct StabilityEntry {
  std::string sector;
  double parent = 0.0;
  double left = 0.0;
  double right = 0.0;
  double residual = 0.0;  // parent - left - right
  bool passed = false;
};

struct StabilityReport {
  std::vector<StabilityEntry> entries;
  double max_residual = 0.0;
  std::string worst_sector;

  [[nodiscard]] bool passed() const noexcept;
};

inline constexpr double kStabilityTolerance = 1e-12;

/// |W(R) - W(R1) - W(R2)| <= 1e-12 * max(1, W(R)) for every listed refined
/// sector, evaluated on an explicit assignment (which may have been tampered
/// with). Throws PreconditionNotMet if a refinement fails check_partition.
[[nodiscard]] StabilityReport check_refinement_stability(const ContinuationModel& model,
                                                         const WeightAssignment& weights,
                                                         const std::vector<std::string>& refined);
[[nodiscard]] StabilityReport check_refinement_stability(const ContinuationModel& model, const Valuation& mu,
                                                         const std::vector<std::string>& refined);

struct RandomModelOptions {
  int max_levels = 5;  // including the root level
  int max_continuations = 64;
  double split_probability = 0.6;
};

/// Random tree (root always split, at most max_levels levels)
/// with 1..max_continuations continuations on random leaves.
[[nodiscard]] ContinuationModel generate_random_model(Rng& rng, const RandomModelOptions& options = {});

}  // namespace rwl
