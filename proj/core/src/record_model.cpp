#include "rwl/record_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rwl/error.hpp"
#include "rwl/random.hpp"

namespace rwl {

namespace {

double split_tolerance(double s) { return 1e-12 * std::max(1.0, s); }

// Unit vector of `sector` orthogonal to `e1`; picks the basis vector with the
// largest residual so the result does not depend on near-cancellation.
StateVector perpendicular_in(const Sector& sector, const StateVector& e1) {
  std::optional<StateVector> best;
  double best_norm = -1.0;
  for (const auto& v : sector.basis()) {
    StateVector r = v;
    r.add_scaled(-inner(e1, v), e1);
    r.add_scaled(-inner(e1, r), e1);
    const double n = r.norm();
    if (n > best_norm) {
      best_norm = n;
      best = std::move(r);
    }
  }
  if (!best || best_norm < tol::kRank) {
    throw Error(ErrorCode::SectorTooThin, "sector has no direction orthogonal to the projected state");
  }
  *best *= 1.0 / best_norm;
  return *best;
}

Refinement split_off(const Sector& parent, std::vector<StateVector> left_basis) {
  auto left = Sector::from_orthonormal(std::move(left_basis), parent.ambient_dim());
  auto right = orthogonal_complement(parent, left);
  return Refinement::make(parent, std::move(left), std::move(right));
}

}  // namespace

RecordLayer::RecordLayer(StateVector state) : state_(std::move(state)) {}

RecordLayer& RecordLayer::add_sector(std::string name, Sector sector, std::string group) {
  if (sector.dim() == 0) throw Error(ErrorCode::DegenerateInput, "record sector '" + name + "' has empty basis");
  if (sector.ambient_dim() != ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "sector '" + name + "' lives in a different ambient space");
  }
  const bool duplicate =
      std::any_of(sectors_.begin(), sectors_.end(), [&](const NamedSector& s) { return s.name == name; });
  if (duplicate) throw Error(ErrorCode::InvalidSector, "duplicate sector name '" + name + "'");
  sectors_.push_back({std::move(name), std::move(sector), std::move(group)});
  return *this;
}

const NamedSector& RecordLayer::sector(const std::string& name) const {
  for (const auto& s : sectors_) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::UnknownSector, name);
}

std::string_view to_string(RichnessKind kind) noexcept {
  switch (kind) {
    case RichnessKind::Saturated: return "saturated";
    case RichnessKind::DenseGrid: return "dense_grid";
    case RichnessKind::EqualSplitOnly: return "equal_split_only";
  }
  return "unknown";
}

std::optional<RichnessKind> parse_richness_kind(std::string_view text) noexcept {
  if (text == "saturated") return RichnessKind::Saturated;
  if (text == "dense_grid") return RichnessKind::DenseGrid;
  if (text == "equal_split_only") return RichnessKind::EqualSplitOnly;
  return std::nullopt;
}

double RefinementClass::component_norm() const { return project(state, sector).norm(); }

Refinement make_binary_refinement(const Sector& sector, const StateVector& state, double r1) {
  if (!(r1 >= 0.0) || !std::isfinite(r1)) throw Error(ErrorCode::OutOfRange, "r1 must be finite and >= 0");
  if (sector.dim() == 0) throw Error(ErrorCode::SectorTooThin, "cannot split the trivial sector");
  const StateVector phi = project(state, sector);
  const double s = phi.norm();
  const double eps = split_tolerance(s);

  if (s == 0.0) {
    if (r1 > eps) throw Error(ErrorCode::ZeroComponent, "state has no component in the sector");
    return split_off(sector, {sector.basis().front()});
  }
  if (r1 > s + 1e-9 * std::max(1.0, s)) {
    std::ostringstream msg;
    msg << "requested " << r1 << " exceeds component norm " << s;
    throw Error(ErrorCode::NormTooLarge, msg.str());
  }

  StateVector e1 = phi;
  e1 *= 1.0 / s;
  const bool full = r1 >= s - eps;
  const bool empty = r1 <= eps;

  if (sector.dim() == 1) {
    if (full) return Refinement::make(sector, sector, Sector::trivial(sector.ambient_dim()));
    if (empty) return Refinement::make(sector, Sector::trivial(sector.ambient_dim()), sector);
    throw Error(ErrorCode::SectorTooThin, "a one-dimensional sector admits only degenerate splits");
  }
  if (full) return split_off(sector, {e1});

  const StateVector perp = perpendicular_in(sector, e1);
  if (empty) return split_off(sector, {perp});

  const double cos_a = std::min(r1 / s, 1.0);
  const double sin_a = std::sqrt(std::max(0.0, (1.0 - cos_a) * (1.0 + cos_a)));
  StateVector u = cos_a * e1;
  u.add_scaled(sin_a, perp);
  return split_off(sector, {std::move(u)});
}

std::vector<double> admissible_left_norms(const RefinementClass& cls, double grid_step) {
  const double s = cls.component_norm();
  std::vector<double> norms;
  if (s == 0.0) return {0.0};

  switch (cls.kind) {
    case RichnessKind::Saturated: {
      if (!(grid_step > 0.0)) throw Error(ErrorCode::OutOfRange, "grid_step must be positive");
      const auto steps = static_cast<long long>(std::floor(s / grid_step + 1e-9));
      for (long long k = 0; k <= steps; ++k) norms.push_back(std::min(static_cast<double>(k) * grid_step, s));
      if (norms.back() < s - split_tolerance(s)) norms.push_back(s);
      break;
    }
    case RichnessKind::DenseGrid: {
      if (cls.denominator_bound < 1) throw Error(ErrorCode::OutOfRange, "denominator bound must be >= 1");
      std::vector<std::pair<int, int>> fractions;  // reduced p/q
      for (int q = 1; q <= cls.denominator_bound; ++q) {
        for (int p = 0; p <= q; ++p) {
          if (std::gcd(p, q) == 1) fractions.emplace_back(p, q);
        }
      }
      std::sort(fractions.begin(), fractions.end(),
                [](auto a, auto b) { return static_cast<long long>(a.first) * b.second <
                                            static_cast<long long>(b.first) * a.second; });
      for (auto [p, q] : fractions) norms.push_back(s * p / q);
      break;
    }
    case RichnessKind::EqualSplitOnly:
      norms = {0.0, s / std::sqrt(2.0), s};
      break;
  }
  return norms;
}

std::vector<Refinement> enumerate_refinements(const RefinementClass& cls, double grid_step) {
  std::vector<Refinement> out;
  for (double r1 : admissible_left_norms(cls, grid_step)) {
    out.push_back(make_binary_refinement(cls.sector, cls.state, r1));
  }
  return out;
}

bool SectorValidation::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.passed; });
}

SectorValidation validate_sector(const RecordLayer& layer, const std::string& name, std::uint64_t seed,
                                 int perturbations) {
  const NamedSector& target = layer.sector(name);
  SectorValidation report{name, {}};

  {
    double worst = 0.0;
    std::string worst_sibling;
    for (const auto& other : layer.sectors()) {
      if (other.name == name || other.group != target.group) continue;
      const double ov = max_overlap(target.sector, other.sector);
      if (ov > worst) {
        worst = ov;
        worst_sibling = other.name;
      }
    }
    std::ostringstream detail;
    detail << "max overlap with exclusive siblings " << worst;
    if (!worst_sibling.empty()) detail << " (" << worst_sibling << ")";
    report.checks.push_back({"internal_discriminability", worst <= tol::kOrthonormal, detail.str()});
  }

  {
    Rng rng(seed);
    const StateVector& psi = layer.state();
    const double base = project(psi, target.sector).norm();
    double worst_excess = -1.0;
    for (int i = 0; i < perturbations; ++i) {
      std::vector<Complex> amps(psi.dim());
      for (auto& a : amps) a = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      StateVector delta(std::move(amps));
      const double n = delta.norm();
      if (n == 0.0) continue;
      const double size = 1e-3 * (1.0 - rng.uniform());  // in (0, 1e-3]
      delta *= size / n;
      StateVector moved = psi + delta;
      const double change = std::abs(project(moved, target.sector).norm() - base);
      worst_excess = std::max(worst_excess, change - delta.norm());
    }
    std::ostringstream detail;
    detail << perturbations << " perturbations, worst (change - |delta|) = " << worst_excess;
    report.checks.push_back({"short_horizon_persistence", worst_excess <= 1e-15, detail.str()});
  }

  {
    const double res = target.sector.orthonormality_residual();
    std::ostringstream detail;
    detail << "dim " << target.sector.dim() << ", orthonormality residual " << res;
    report.checks.push_back(
        {"admissible_refinement_closure", target.sector.dim() >= 1 && res <= tol::kOrthonormal, detail.str()});
  }
  return report;
}

}  // namespace rwl
