#include "rwl/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rwl/error.hpp"

namespace rwl {

ContinuationModel::ContinuationModel(std::string root_id) {
  index_.emplace(root_id, 0);
  nodes_.push_back({std::move(root_id), std::nullopt, {}});
}

std::size_t ContinuationModel::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownSector, id);
  return it->second;
}

void ContinuationModel::add_child(std::size_t parent, std::string id) {
  if (index_.contains(id)) throw Error(ErrorCode::MalformedTree, "duplicate sector id '" + id + "'");
  const std::size_t k = nodes_.size();
  index_.emplace(id, k);
  nodes_.push_back({std::move(id), parent, {}});
  nodes_[parent].children.push_back(k);
}

ContinuationModel& ContinuationModel::refine(const std::string& leaf, std::string left, std::string right) {
  const std::size_t k = index_of(leaf);
  if (!nodes_[k].children.empty()) throw Error(ErrorCode::MalformedTree, "'" + leaf + "' is already refined");
  const bool occupied = std::any_of(continuations_.begin(), continuations_.end(),
                                    [&](const Continuation& c) { return c.realized_sector == leaf; });
  if (occupied) throw Error(ErrorCode::MalformedTree, "'" + leaf + "' carries continuations and cannot be split");
  if (left == right) throw Error(ErrorCode::MalformedTree, "children must have distinct ids");
  add_child(k, std::move(left));
  add_child(k, std::move(right));
  return *this;
}

ContinuationModel& ContinuationModel::attach(Continuation continuation) {
  if (!(continuation.weight >= 0.0) || !std::isfinite(continuation.weight)) {
    throw Error(ErrorCode::NegativeValue, "continuation '" + continuation.id + "' has invalid weight");
  }
  if (!is_leaf(continuation.realized_sector)) {
    throw Error(ErrorCode::MalformedTree, "continuation '" + continuation.id + "' attached to non-leaf '" +
                                              continuation.realized_sector + "'");
  }
  const bool duplicate = std::any_of(continuations_.begin(), continuations_.end(),
                                     [&](const Continuation& c) { return c.id == continuation.id; });
  if (duplicate) throw Error(ErrorCode::MalformedTree, "duplicate continuation id '" + continuation.id + "'");
  continuations_.push_back(std::move(continuation));
  return *this;
}

ContinuationModel ContinuationModel::assemble_unchecked(std::string root_id, const std::vector<Split>& splits,
                                                        std::vector<Continuation> continuations) {
  ContinuationModel model(std::move(root_id));
  for (const auto& s : splits) model.refine(s.parent, s.left, s.right);
  for (auto& c : continuations) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw Error(ErrorCode::NegativeValue, "continuation '" + c.id + "' has invalid weight");
    }
    if (!model.has_sector(c.realized_sector)) {
      throw Error(ErrorCode::MalformedTree, "continuation '" + c.id + "' names unknown sector '" +
                                                c.realized_sector + "'");
    }
    model.continuations_.push_back(std::move(c));
  }
  return model;
}

bool ContinuationModel::is_leaf(const std::string& id) const { return nodes_[index_of(id)].children.empty(); }

const ContinuationModel::Node& ContinuationModel::node(const std::string& id) const { return nodes_[index_of(id)]; }

std::vector<std::string> ContinuationModel::refined_sectors() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if (!n.children.empty()) out.push_back(n.id);
  }
  return out;
}

std::vector<std::string> ContinuationModel::leaves() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if (n.children.empty()) out.push_back(n.id);
  }
  return out;
}

std::size_t ContinuationModel::depth() const {
  std::size_t deepest = 0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    std::size_t d = 0;
    for (auto p = nodes_[k].parent; p; p = nodes_[*p].parent) ++d;
    deepest = std::max(deepest, d);
  }
  return deepest;
}

bool ContinuationModel::within(std::size_t node, std::size_t ancestor) const {
  for (std::optional<std::size_t> k = node; k; k = nodes_[*k].parent) {
    if (*k == ancestor) return true;
  }
  return false;
}

Bundle ContinuationModel::bundle_of(const std::string& sector) const {
  const std::size_t target = index_of(sector);
  Bundle bundle;
  for (const auto& c : continuations_) {
    if (within(index_of(c.realized_sector), target)) bundle.insert(c.id);
  }
  return bundle;
}

Valuation::Valuation(std::map<std::string, double> atoms) : atoms_(std::move(atoms)) {
  for (const auto& [id, w] : atoms_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::NegativeValue, "atom '" + id + "' is negative");
  }
}

Valuation Valuation::from_model(const ContinuationModel& model) {
  std::map<std::string, double> atoms;
  for (const auto& c : model.continuations()) atoms.emplace(c.id, c.weight);
  return Valuation(std::move(atoms));
}

double Valuation::measure(const Bundle& bundle) const {
  double sum = 0.0;
  for (const auto& id : bundle) {
    const auto it = atoms_.find(id);
    if (it == atoms_.end()) throw Error(ErrorCode::OutOfRange, "no atom for continuation '" + id + "'");
    sum += it->second;
  }
  return sum;
}

double induced_weight(const ContinuationModel& model, const Valuation& mu, const std::string& sector) {
  return mu.measure(model.bundle_of(sector));
}

WeightAssignment induced_weights(const ContinuationModel& model, const Valuation& mu) {
  WeightAssignment out;
  for (const auto& n : model.nodes()) out.emplace(n.id, induced_weight(model, mu, n.id));
  return out;
}

PartitionVerdict check_partition(const ContinuationModel& model, const std::string& sector) {
  const auto& node = model.node(sector);
  if (node.children.size() != 2) {
    throw Error(ErrorCode::MalformedTree, "'" + sector + "' does not have exactly two children");
  }
  const auto& nodes = model.nodes();
  const Bundle parent = model.bundle_of(sector);
  const Bundle left = model.bundle_of(nodes[node.children[0]].id);
  const Bundle right = model.bundle_of(nodes[node.children[1]].id);

  PartitionVerdict verdict;
  verdict.sector = sector;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(verdict.shared));
  Bundle both;
  std::set_union(left.begin(), left.end(), right.begin(), right.end(), std::inserter(both, both.end()));
  std::set_difference(parent.begin(), parent.end(), both.begin(), both.end(),
                      std::back_inserter(verdict.uncovered));
  verdict.disjoint = verdict.shared.empty();
  verdict.covered = both == parent;
  return verdict;
}

bool StabilityReport::passed() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const StabilityEntry& e) { return e.passed; });
}

StabilityReport check_refinement_stability(const ContinuationModel& model, const WeightAssignment& weights,
                                           const std::vector<std::string>& refined) {
  const auto weight_of = [&](const std::string& id) {
    const auto it = weights.find(id);
    if (it == weights.end()) throw Error(ErrorCode::UnknownSector, "no weight for '" + id + "'");
    return it->second;
  };
  StabilityReport report;
  for (const auto& sector : refined) {
    const auto verdict = check_partition(model, sector);
    if (!verdict.passed()) {
      throw Error(ErrorCode::PreconditionNotMet, "refinement of '" + sector + "' is not a continuation partition");
    }
    const auto& node = model.node(sector);
    StabilityEntry e;
    e.sector = sector;
    e.parent = weight_of(sector);
    e.left = weight_of(model.nodes()[node.children[0]].id);
    e.right = weight_of(model.nodes()[node.children[1]].id);
    e.residual = e.parent - e.left - e.right;
    e.passed = std::abs(e.residual) <= kStabilityTolerance * std::max(1.0, e.parent);
    if (std::abs(e.residual) > std::abs(report.max_residual) || report.worst_sector.empty()) {
      report.max_residual = std::abs(e.residual);
      report.worst_sector = sector;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

StabilityReport check_refinement_stability(const ContinuationModel& model, const Valuation& mu,
                                           const std::vector<std::string>& refined) {
  return check_refinement_stability(model, induced_weights(model, mu), refined);
}

ContinuationModel generate_random_model(Rng& rng, const RandomModelOptions& options) {
  ContinuationModel model("R");
  // Breadth-first growth; the root is always split so there is at least one refinement.
  std::vector<std::pair<std::string, int>> frontier{{"R", 1}};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const auto [id, level] = frontier[i];
    if (level >= options.max_levels) continue;
    if (i > 0 && rng.uniform() >= options.split_probability) continue;
    model.refine(id, id + ".0", id + ".1");
    frontier.emplace_back(id + ".0", level + 1);
    frontier.emplace_back(id + ".1", level + 1);
  }
  const auto leaves = model.leaves();
  const auto count = 1 + rng.index(static_cast<std::size_t>(std::max(1, options.max_continuations)));
  for (std::size_t k = 0; k < count; ++k) {
    // A few exact zeros exercise empty-mass atoms.
    const double w = rng.uniform() < 0.05 ? 0.0 : rng.uniform();
    model.attach({"c" + std::to_string(k), leaves[rng.index(leaves.size())], w});
  }
  return model;
}

}  // namespace rwl
