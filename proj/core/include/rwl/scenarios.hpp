#pragma once

// End-to-end demonstrations: the two-outcome spin layer, normalized (Born)
// weights over a complete orthogonal family, and a synthetic coarse record
// refined into many sub-records.

#include <cstdint>
#include <optional>
#include <vector>

#include "rwl/error.hpp"
#include "rwl/funceq.hpp"
#include "rwl/linalg.hpp"
#include "rwl/saturation.hpp"

namespace rwl {

struct SpinReport {
  double up = 0.0;
  double down = 0.0;
  double total = 0.0;
  bool sectors_valid = false;
  bool partition_ok = false;
  bool stability_ok = false;
};

/// Builds the C^2 layer with R_up = span{e0}, R_down = span{e1}, a
/// continuation model R -> {up, down} with atoms |P psi|^2, and checks the
/// partition and stability. Throws NotNormalized unless |a|^2 + |b|^2 = 1
/// within 1e-10.
[[nodiscard]] SpinReport spin_demo(Complex alpha, Complex beta);

struct BornTable {
  std::vector<double> weights;
  double sum = 0.0;
  double c = 1.0;
};

/// Weights |P_i psi|^2 for a complete orthogonal family. Throws NotNormalized
/// if |psi|^2 != 1, InvalidSector if two sectors overlap, and
/// IncompleteDecomposition if sum |P_i psi|^2 misses |psi|^2 (all 1e-9).
[[nodiscard]] BornTable normalized_weights(const StateVector& state, const std::vector<Sector>& sectors);

enum class SubrecordProfile { Random, Uniform };

struct CoarseRecordOptions {
  std::size_t subrecords = 16;
  std::uint64_t seed = 1;
  SubrecordProfile profile = SubrecordProfile::Random;
  /// Overrides the generated shares (must have `subrecords` entries).
  std::optional<std::vector<double>> forced_weights;
};

struct CoarseRecordReport {
  std::size_t subrecords = 0;
  std::uint64_t seed = 0;
  std::vector<double> weights;  // measured |P_{S_i} psi|^2 at the coarsest level
  std::optional<std::vector<double>> realized_sums;  // when n <= 20
  DensityCertificate certificate;
  DenseExtensionReport extension;
  double recovered_c = 0.0;
  bool c_ok = false;

  [[nodiscard]] bool passed() const noexcept {
    return certificate.valid && certificate.converging && extension.passed() && c_ok;
  }
};

/// Coarse sector R = C^n split into coordinate sub-records with seeded random
/// (or uniform) shares; the refining sequence splits every share into 4 and
/// then 16 equal pieces. The profile function is extracted from induced
/// weights of greedy groupings at the finest level and must pass the dense
/// extension check with c = 1 within 1e-6. Throws OutOfRange unless
/// 4 <= n <= 1024.
[[nodiscard]] CoarseRecordReport coarse_record_demo(const CoarseRecordOptions& options);

struct JumpControl {
  double center = 0.5;
  double half_width = 1e-3;
  double jump = 0.1;
};

/// r^2 plus `jump` on the open window |r - center| < half_width: two jump
/// discontinuities, quadratic everywhere else.
[[nodiscard]] ProfileFunction jump_control_profile(const JumpControl& control = {});

struct DenseSaturationDemo {
  int denominator_bound = 0;
  double continuity_modulus = 0.0;
  DenseExtensionReport quadratic;
  /// Same relation layout with every relation touching the jump window removed.
  DenseExtensionReport control;
  std::size_t control_failures = 0;
  /// All failing control probes put u = center^2, i.e. inside the window.
  bool control_fails_only_inside_window = false;
  /// Error raised when only equal-split relations are offered for g_eps(0.5).
  std::optional<ErrorCode> equal_split_error;

  [[nodiscard]] bool passed() const noexcept {
    return quadratic.passed() && !control.passed() && control_failures > 0 && control_fails_only_inside_window &&
           equal_split_error == ErrorCode::DensityGapTooLarge;
  }
};

/// Rational relations t = s p/q (q <= denominator_bound) for
/// s in {0.25, 0.5, ..., 2}; probes straddle r = 0.5 and sample the interior.
[[nodiscard]] DenseSaturationDemo dense_saturation_demo(int denominator_bound);

}  // namespace rwl
