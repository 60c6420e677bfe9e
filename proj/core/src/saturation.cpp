#include "rwl/saturation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>

#include "rwl/error.hpp"

namespace rwl {

namespace {

void require_non_negative(const std::vector<double>& weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::NegativeValue, "weights must be finite and >= 0");
  }
}

double sum_of(const std::vector<double>& weights) { return std::accumulate(weights.begin(), weights.end(), 0.0); }

double slack(double total) { return 1e-12 * std::max(1.0, total); }

void require_target(double target, double total) {
  if (!(target >= -slack(total)) || target > total + slack(total)) {
    std::ostringstream msg;
    msg << "target " << target << " outside [0, " << total << "]";
    throw Error(ErrorCode::TargetOutOfRange, msg.str());
  }
}

}  // namespace

Decomposition::Decomposition(std::vector<double> weights) : weights_(std::move(weights)) {
  require_non_negative(weights_);
  total_ = sum_of(weights_);
}

Decomposition::Decomposition(std::vector<double> weights, double total) : weights_(std::move(weights)), total_(total) {
  require_non_negative(weights_);
  if (std::abs(sum_of(weights_) - total_) > 1e-10) {
    throw Error(ErrorCode::InconsistentTotals, "weights do not sum to the declared total");
  }
}

Decomposition Decomposition::uniform(std::size_t n, double total) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "uniform decomposition needs n >= 1");
  return Decomposition(std::vector<double>(n, total / static_cast<double>(n)), total);
}

double Decomposition::max_weight() const noexcept {
  return weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

double Decomposition::eps_share() const noexcept { return total_ > 0.0 ? max_weight() / total_ : 0.0; }

Decomposition Decomposition::split_uniformly(std::size_t parts) const {
  if (parts == 0) throw Error(ErrorCode::OutOfRange, "cannot split into zero parts");
  std::vector<double> finer;
  finer.reserve(weights_.size() * parts);
  for (double w : weights_) finer.insert(finer.end(), parts, w / static_cast<double>(parts));
  return Decomposition(std::move(finer), total_);
}

SubsetSum subset_sum_greedy(const std::vector<double>& weights, double target) {
  require_non_negative(weights);
  const double total = sum_of(weights);
  require_target(target, total);

  SubsetSum out;
  if (target >= total - slack(total)) {
    out.indices.resize(weights.size());
    std::iota(out.indices.begin(), out.indices.end(), std::size_t{0});
    out.achieved = total;
    out.gap = 0.0;
    return out;
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  for (std::size_t i : order) {
    if (out.achieved + weights[i] <= target) {
      out.achieved += weights[i];
      out.indices.push_back(i);
    }
  }
  std::sort(out.indices.begin(), out.indices.end());
  out.gap = std::max(0.0, target - out.achieved);
  return out;
}

namespace {

// Every (subset sum, mask) in lexicographic order, so ties go to the smallest
// mask. Adding weight b merges the list with a shifted copy of itself, which
// keeps it sorted in O(2^n) total work.
std::vector<std::pair<double, std::uint32_t>> sorted_subsets(const std::vector<double>& weights) {
  std::vector<std::pair<double, std::uint32_t>> sums{{0.0, 0U}};
  sums.reserve(std::size_t{1} << weights.size());
  std::vector<std::pair<double, std::uint32_t>> shifted;
  std::vector<std::pair<double, std::uint32_t>> merged;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    shifted.clear();
    for (const auto& [s, m] : sums) shifted.emplace_back(s + weights[b], m | (1U << b));
    merged.clear();
    std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
    sums.swap(merged);
  }
  return sums;
}

SubsetSum from_mask(std::size_t n, std::uint32_t mask, double achieved, double target) {
  SubsetSum out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1U << i)) out.indices.push_back(i);
  }
  out.achieved = achieved;
  out.gap = std::max(0.0, target - achieved);
  return out;
}

}  // namespace

SubsetSum subset_sum_exhaustive(const std::vector<double>& weights, double target) {
  return subset_sum_exhaustive(weights, std::vector<double>{target}).front();
}

std::vector<SubsetSum> subset_sum_exhaustive(const std::vector<double>& weights, const std::vector<double>& targets) {
  if (weights.size() > kMaxExhaustiveWeights) throw Error(ErrorCode::TooManyWeights, "exhaustive search needs n <= 20");
  require_non_negative(weights);
  const double total = sum_of(weights);
  for (double x : targets) require_target(x, total);

  const auto order = sorted_subsets(weights);

  std::vector<SubsetSum> out;
  out.reserve(targets.size());
  for (double x : targets) {
    const double limit = x + slack(total);
    auto it = std::upper_bound(order.begin(), order.end(), limit,
                               [](double v, const auto& e) { return v < e.first; });
    // The empty set (sum 0) always fits, so `it` is past the first element.
    const double best = std::prev(it)->first;
    const auto first = std::lower_bound(order.begin(), it, best, [](const auto& e, double v) { return e.first < v; });
    out.push_back(from_mask(weights.size(), first->second, best, x));
  }
  return out;
}

std::vector<double> realized_sums(const std::vector<double>& weights) {
  if (weights.size() > kMaxExhaustiveWeights) {
    throw Error(ErrorCode::TooManyWeights, std::to_string(weights.size()) + " weights; exhaustive limit is 20");
  }
  require_non_negative(weights);
  std::vector<double> sums{0.0};
  sums.reserve(std::size_t{1} << weights.size());
  for (double w : weights) {
    const std::size_t n = sums.size();
    for (std::size_t i = 0; i < n; ++i) sums.push_back(sums[i] + w);
  }
  std::sort(sums.begin(), sums.end());
  std::vector<double> out;
  long long last_key = 0;
  for (double s : sums) {
    const long long key = std::llround(s / kSumQuantum);
    if (out.empty() || key != last_key) {
      out.push_back(s);
      last_key = key;
    }
  }
  return out;
}

DensityCertificate density_certificate(const std::vector<Decomposition>& levels, const std::vector<double>& targets) {
  if (levels.empty()) throw Error(ErrorCode::PreconditionNotMet, "no decomposition levels");
  DensityCertificate cert;
  cert.total = levels.front().total();
  for (const auto& level : levels) {
    if (std::abs(level.total() - cert.total) > 1e-10 * std::max(1.0, cert.total)) {
      throw Error(ErrorCode::InconsistentTotals, "decomposition levels disagree on the total squared norm");
    }
  }
  for (double x : targets) require_target(x, cert.total);
  cert.targets = targets.size();

  cert.valid = true;
  for (const auto& level : levels) {
    LevelCertificate lc;
    lc.pieces = level.weights().size();
    lc.eps_share = level.eps_share();
    lc.bound = level.max_weight();
    lc.valid = true;
    for (double x : targets) {
      const auto best = subset_sum_greedy(level.weights(), std::clamp(x, 0.0, level.total()));
      if (best.gap > lc.worst_gap) {
        lc.worst_gap = best.gap;
        lc.worst_target = x;
      }
      lc.worst_norm_gap =
          std::max(lc.worst_norm_gap, std::sqrt(std::max(0.0, x)) - std::sqrt(std::max(0.0, best.achieved)));
      const bool at_total = x >= level.total() - slack(level.total());
      if (!at_total && !(best.gap < lc.bound + kSumQuantum)) lc.valid = false;
    }
    cert.valid = cert.valid && lc.valid;
    cert.levels.push_back(lc);
  }

  cert.converging = cert.levels.size() >= 2;
  cert.gaps_monotone = true;
  for (std::size_t i = 1; i < cert.levels.size(); ++i) {
    if (!(cert.levels[i].eps_share < cert.levels[i - 1].eps_share)) cert.converging = false;
    if (cert.levels[i].worst_gap > cert.levels[i - 1].worst_gap + kSumQuantum) cert.gaps_monotone = false;
  }
  return cert;
}

std::vector<double> default_targets(double total, double step_fraction) {
  if (!(step_fraction > 0.0)) throw Error(ErrorCode::OutOfRange, "target step must be positive");
  const auto n = static_cast<long long>(std::llround(1.0 / step_fraction));
  std::vector<double> targets;
  for (long long k = 0; k <= n; ++k) targets.push_back(std::min(total, total * static_cast<double>(k) / static_cast<double>(n)));
  return targets;
}

std::vector<double> parse_weight_list(std::istream& in) {
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view field(line.data() + first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value) || value < 0.0) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": expected a non-negative decimal, got '" + std::string(field) + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace rwl
