#include "rwl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwl/error.hpp"

namespace rwl {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::DegenerateInput, "state vector must have positive dimension");
  if (dim > kMaxAmbientDim) {
    throw Error(ErrorCode::OutOfRange,
                "dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(kMaxAmbientDim));
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Projection of v onto the span of an orthonormal list, subtracted in place.
void remove_components(StateVector& v, const std::vector<StateVector>& orthonormal) {
  for (const auto& e : orthonormal) v.add_scaled(-inner(e, v), e);
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  require_dim(amps_.size());
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes) : amps_(amplitudes) {
  require_dim(amps_.size());
}

StateVector StateVector::zero(std::size_t dim) { return StateVector(std::vector<Complex>(dim)); }

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw Error(ErrorCode::OutOfRange, "basis index out of range");
  std::vector<Complex> amps(dim);
  amps[k] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

double StateVector::norm() const noexcept {
  // Scaled accumulation keeps tiny and huge amplitudes out of under/overflow.
  double scale = 0.0;
  for (const auto& a : amps_) scale = std::max({scale, std::abs(a.real()), std::abs(a.imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a / scale);
  return scale * std::sqrt(sum);
}

StateVector& StateVector::operator+=(const StateVector& other) { return add_scaled(1.0, other); }

StateVector& StateVector::operator-=(const StateVector& other) { return add_scaled(-1.0, other); }

StateVector& StateVector::operator*=(Complex scale) noexcept {
  for (auto& a : amps_) a *= scale;
  return *this;
}

StateVector& StateVector::add_scaled(Complex scale, const StateVector& other) {
  require_same_dim(dim(), other.dim());
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += scale * other.amps_[i];
  return *this;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim());
  Complex sum{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::DegenerateInput, "no vectors to orthonormalize");
  const std::size_t dim = vectors.front().dim();
  double max_norm = 0.0;
  for (const auto& v : vectors) {
    require_same_dim(dim, v.dim());
    max_norm = std::max(max_norm, v.norm());
  }
  const double drop_below = tol::kRank * max_norm;

  std::vector<StateVector> out;
  for (const auto& v : vectors) {
    if (out.size() == dim) break;
    StateVector r = v;
    remove_components(r, out);
    remove_components(r, out);  // second pass: "twice is enough"
    const double n = r.norm();
    if (n < drop_below || n == 0.0) continue;
    r *= 1.0 / n;
    out.push_back(std::move(r));
  }
  if (out.empty()) throw Error(ErrorCode::DegenerateInput, "span collapses to {0}");
  return out;
}

Sector Sector::from_orthonormal(std::vector<StateVector> basis, std::size_t ambient_dim) {
  require_dim(ambient_dim);
  for (const auto& v : basis) require_same_dim(ambient_dim, v.dim());
  Sector s(std::move(basis), ambient_dim);
  if (s.dim() > ambient_dim) throw Error(ErrorCode::InvalidSector, "more basis vectors than dimensions");
  const double res = s.orthonormality_residual();
  if (res > tol::kOrthonormal) {
    throw Error(ErrorCode::InvalidSector, "basis not orthonormal (residual " + std::to_string(res) + ")");
  }
  return s;
}

Sector Sector::span(const std::vector<StateVector>& vectors) {
  auto basis = orthonormalize(vectors);
  const std::size_t dim = basis.front().dim();
  return Sector(std::move(basis), dim);
}

Sector Sector::coordinate(std::size_t ambient_dim, std::span<const std::size_t> indices) {
  require_dim(ambient_dim);
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidSector, "repeated basis index");
  }
  std::vector<StateVector> basis;
  basis.reserve(indices.size());
  for (auto k : indices) basis.push_back(StateVector::basis(ambient_dim, k));
  return Sector(std::move(basis), ambient_dim);
}

Sector Sector::coordinate(std::size_t ambient_dim, std::initializer_list<std::size_t> indices) {
  return coordinate(ambient_dim, std::span<const std::size_t>(indices.begin(), indices.size()));
}

Sector Sector::full(std::size_t ambient_dim) {
  std::vector<std::size_t> all(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) all[i] = i;
  return coordinate(ambient_dim, all);
}

Sector Sector::trivial(std::size_t ambient_dim) {
  require_dim(ambient_dim);
  return Sector({}, ambient_dim);
}

double Sector::orthonormality_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i; j < basis_.size(); ++j) {
      const Complex expected = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(basis_[i], basis_[j]) - expected));
    }
  }
  return worst;
}

Sector orthogonal_complement(const Sector& parent, const Sector& sub) {
  require_same_dim(parent.ambient_dim(), sub.ambient_dim());
  std::vector<StateVector> kept = sub.basis();
  const std::size_t offset = kept.size();
  for (const auto& v : parent.basis()) {
    if (kept.size() - offset + sub.dim() >= parent.dim()) break;
    StateVector r = v;
    remove_components(r, kept);
    remove_components(r, kept);
    const double n = r.norm();
    // Parent basis vectors have unit norm, so the rank threshold is absolute here.
    if (n < tol::kRank) continue;
    r *= 1.0 / n;
    kept.push_back(std::move(r));
  }
  std::vector<StateVector> complement(kept.begin() + static_cast<std::ptrdiff_t>(offset), kept.end());
  return Sector::from_orthonormal(std::move(complement), parent.ambient_dim());
}

StateVector project(const StateVector& psi, const Sector& sector) {
  require_same_dim(psi.dim(), sector.ambient_dim());
  StateVector out = StateVector::zero(psi.dim());
  for (const auto& e : sector.basis()) out.add_scaled(inner(e, psi), e);
  return out;
}

double max_overlap(const Sector& a, const Sector& b) {
  require_same_dim(a.ambient_dim(), b.ambient_dim());
  double worst = 0.0;
  for (const auto& x : a.basis()) {
    for (const auto& y : b.basis()) worst = std::max(worst, std::abs(inner(x, y)));
  }
  return worst;
}

Refinement Refinement::make(Sector parent, Sector left, Sector right) {
  require_same_dim(parent.ambient_dim(), left.ambient_dim());
  require_same_dim(parent.ambient_dim(), right.ambient_dim());
  if (left.dim() + right.dim() != parent.dim()) {
    throw Error(ErrorCode::InvalidRefinement, "dimension count " + std::to_string(left.dim()) + "+" +
                                                  std::to_string(right.dim()) +
                                                  " != " + std::to_string(parent.dim()));
  }
  if (const double ov = max_overlap(left, right); ov > tol::kOrthonormal) {
    throw Error(ErrorCode::InvalidRefinement, "left and right overlap (" + std::to_string(ov) + ")");
  }
  for (const auto& v : parent.basis()) {
    StateVector r = v;
    for (const auto* part : {&left, &right}) {
      for (const auto& e : part->basis()) r.add_scaled(-inner(e, v), e);
    }
    if (r.norm() > tol::kNormIdentity) {
      throw Error(ErrorCode::InvalidRefinement, "parent basis vector not reconstructed by left (+) right");
    }
  }
  return Refinement(std::move(parent), std::move(left), std::move(right));
}

PythagorasTriple pythagoras_check(const StateVector& psi, const Refinement& refinement) {
  return {project(psi, refinement.parent()).norm_squared(),
          project(psi, refinement.left()).norm_squared(),
          project(psi, refinement.right()).norm_squared()};
}

}  // namespace rwl
