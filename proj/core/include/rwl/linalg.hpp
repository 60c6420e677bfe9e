#pragma once

// Small-dimension complex linear algebra: state vectors, sectors given by
// orthonormal bases, orthogonal projection and binary orthogonal splits.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rwl {

using Complex = std::complex<double>;

namespace tol {
/// Orthonormality residuals (absolute).
inline constexpr double kOrthonormal = 1e-10;
/// Norm identities such as Pythagoras (relative to max(1, |psi|^2)).
inline constexpr double kNormIdentity = 1e-9;
/// Gram-Schmidt drops a candidate whose residual is below this times the largest input norm.
inline constexpr double kRank = 1e-8;
}  // namespace tol

inline constexpr std::size_t kMaxAmbientDim = 4096;

/// Finite list of complex amplitudes. Not assumed normalized.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  static StateVector zero(std::size_t dim);
  /// Unit vector e_k in `dim` dimensions.
  static StateVector basis(std::size_t dim, std::size_t k);

  [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
  [[nodiscard]] const Complex& operator[](std::size_t i) const { return amps_[i]; }

  [[nodiscard]] double norm_squared() const noexcept;
  [[nodiscard]] double norm() const noexcept;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex scale) noexcept;
  /// this += scale * other
  StateVector& add_scaled(Complex scale, const StateVector& other);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(Complex s, StateVector v) { return v *= s; }

 private:
  std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
[[nodiscard]] Complex inner(const StateVector& a, const StateVector& b);

/// Closed subspace represented by an orthonormal basis. A zero-dimensional
/// sector (empty basis) is the trivial subspace {0}.
class Sector {
 public:
  /// Validates orthonormality of `basis` within tol::kOrthonormal.
  static Sector from_orthonormal(std::vector<StateVector> basis, std::size_t ambient_dim);
  /// Orthonormalizes `vectors` first; dependent vectors are dropped.
  static Sector span(const std::vector<StateVector>& vectors);
  /// span{e_i : i in indices}.
  static Sector coordinate(std::size_t ambient_dim, std::span<const std::size_t> indices);
  static Sector coordinate(std::size_t ambient_dim, std::initializer_list<std::size_t> indices);
  static Sector full(std::size_t ambient_dim);
  static Sector trivial(std::size_t ambient_dim);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  [[nodiscard]] const std::vector<StateVector>& basis() const noexcept { return basis_; }

  /// Largest |<e_i|e_j> - delta_ij| over the basis.
  [[nodiscard]] double orthonormality_residual() const;

 private:
  Sector(std::vector<StateVector> basis, std::size_t ambient_dim)
      : basis_(std::move(basis)), ambient_dim_(ambient_dim) {}

  std::vector<StateVector> basis_;
  std::size_t ambient_dim_;
};

/// Binary orthogonal split parent = left (+) right.
class Refinement {
 public:
  /// Checks left _|_ right, dimension count, and reconstruction of every
  /// parent basis vector from left U right. Throws InvalidRefinement.
  static Refinement make(Sector parent, Sector left, Sector right);

  [[nodiscard]] const Sector& parent() const noexcept { return parent_; }
  [[nodiscard]] const Sector& left() const noexcept { return left_; }
  [[nodiscard]] const Sector& right() const noexcept { return right_; }

 private:
  Refinement(Sector parent, Sector left, Sector right)
      : parent_(std::move(parent)), left_(std::move(left)), right_(std::move(right)) {}

  Sector parent_;
  Sector left_;
  Sector right_;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. Candidates
/// whose residual falls below tol::kRank * (max input norm) are dropped;
/// throws DegenerateInput only if nothing survives.
[[nodiscard]] std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vectors);

/// Orthonormal basis of the complement of `sub` inside `parent`.
[[nodiscard]] Sector orthogonal_complement(const Sector& parent, const Sector& sub);

/// P_R psi.
[[nodiscard]] StateVector project(const StateVector& psi, const Sector& sector);

/// Largest |<a_i|b_j>| between the two bases.
[[nodiscard]] double max_overlap(const Sector& a, const Sector& b);

struct PythagorasTriple {
  double parent;  // |P_R psi|^2
  double left;    // |P_R1 psi|^2
  double right;   // |P_R2 psi|^2

  [[nodiscard]] double residual() const noexcept { return parent - left - right; }
};

[[nodiscard]] PythagorasTriple pythagoras_check(const StateVector& psi, const Refinement& refinement);

}  // namespace rwl
