#pragma once

// The quadratic functional equation g(sqrt(r1^2 + r2^2)) = g(r1) + g(r2):
// residual checks, the equal-split counterexample family, the additive
// (Cauchy) scaffold on rationals, quadratic certification, and the
// dense-relations-plus-continuity extension.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rwl/profiles.hpp"

namespace rwl {

/// s^2 (1 + epsilon sin(4 pi log2 s)) with log2 s = ln s / ln 2; 0 at s = 0.
/// Throws EpsilonOutOfRange unless 0 < epsilon < 1.
[[nodiscard]] double counterexample_g(double epsilon, double s);

using NormPair = std::pair<double, double>;

struct EquationReport {
  std::size_t pairs_checked = 0;
  /// max |g(sqrt(r1^2 + r2^2)) - g(r1) - g(r2)|
  double max_residual = 0.0;
  /// Same residual divided by max(1, |g(sqrt(r1^2 + r2^2))|).
  double max_scaled_residual = 0.0;
  NormPair worst_pair{0.0, 0.0};
};

/// Throws MissingSample if a sampled g lacks any needed point.
[[nodiscard]] EquationReport check_functional_equation(const ProfileFunction& g, const std::vector<NormPair>& pairs);

/// Unordered pairs (r1 <= r2) from `grid` whose combined norm does not exceed
/// the grid maximum and at which g is defined (exact sample hits for sampled g).
[[nodiscard]] std::vector<NormPair> compatible_pairs(const ProfileFunction& g, const std::vector<double>& grid);

/// {0, step, 2 step, ..., hi}.
[[nodiscard]] std::vector<double> uniform_grid(double hi, double step);

struct EqualSplitReport {
  std::size_t samples = 0;
  double max_residual = 0.0;  // max |g(s) - 2 g(s / sqrt 2)|
  double worst_s = 0.0;
};

[[nodiscard]] EqualSplitReport check_equal_split_relation(const ProfileFunction& g, const std::vector<double>& samples);

/// Non-negative rational p/q in lowest terms, q >= 1.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  static Rational make(std::int64_t p, std::int64_t q);
  [[nodiscard]] double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
  auto operator<=>(const Rational&) const = default;
};

/// All reduced p/q with q <= max_denominator and p/q <= upper.
[[nodiscard]] std::vector<Rational> rational_grid(std::int64_t max_denominator, std::int64_t upper);

struct CauchyProbe {
  double x = 0.0;
  std::optional<double> value;  // f(x), when known
};

struct CauchyProbeResult {
  double x = 0.0;
  Rational lower;
  Rational upper;
  double bracket_width = 0.0;  // c (q+ - q-)
  std::optional<bool> contained;
};

struct CauchyReport {
  double c = 0.0;
  double max_deviation = 0.0;  // max |f(p/q) - c p/q|
  std::size_t samples = 0;
  std::size_t additivity_checks = 0;
  std::int64_t denominator_bound = 0;
  std::vector<CauchyProbeResult> probes;

  [[nodiscard]] bool linear() const noexcept { return max_deviation <= 1e-10 * std::max(1.0, c); }
};

/// c := f(1); verifies f(a/d + b/d) = f(a/d) + f(b/d) on every common
/// denominator d <= bound (AdditivityViolation), then linearity on all
/// samples, then brackets each probe between neighbouring rationals of the
/// bound. Throws NegativeValue for a negative sample, MissingSample if 1 or a
/// bracket endpoint is absent.
[[nodiscard]] CauchyReport cauchy_linear_check(const std::map<Rational, double>& f_samples,
                                               const std::vector<CauchyProbe>& probes);

struct QuadraticCertificate {
  double c = 0.0;
  double max_relative_error = 0.0;  // max |g(r) - c r^2| / max(1, c r^2)
  double threshold = 0.0;           // max(100 tol, 1e-6)
  double equation_residual = 0.0;   // scaled residual on the compatible pairs
  std::size_t pairs_checked = 0;
  bool certified = false;
};

/// c := g(1). Throws PreconditionNotMet when the equation residual on the
/// grid-compatible pairs exceeds tol: such g lie outside what the uniqueness
/// statement constrains, so certification does not apply.
[[nodiscard]] QuadraticCertificate certify_quadratic(const ProfileFunction& g, const std::vector<double>& grid,
                                                     double tol);

/// g(s) = g(t) + g(u) with t^2 + u^2 = s^2.
struct Relation {
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

class RelationSet {
 public:
  /// Throws PreconditionNotMet if |t^2 + u^2 - s^2| > 1e-10.
  void add(Relation r);
  [[nodiscard]] const std::vector<Relation>& relations() const noexcept { return relations_; }
  [[nodiscard]] std::size_t size() const noexcept { return relations_.size(); }
  [[nodiscard]] bool empty() const noexcept { return relations_.empty(); }

  /// t = s p/q for reduced p/q, q <= denominator_bound. Relations touching a
  /// norm for which `skip` returns true are left out.
  static RelationSet rational(const std::vector<double>& s_values, int denominator_bound,
                              const std::function<bool(double)>& skip = {});
  /// Only t = s/sqrt(2).
  static RelationSet equal_split(const std::vector<double>& s_values);
  /// t = sqrt(x) for each achieved squared share x in [0, s^2].
  static RelationSet from_squared_shares(double s, const std::vector<double>& shares);

 private:
  std::vector<Relation> relations_;
};

/// Additivity probe for f(x) = g(sqrt x): f(u + v) = f(u) + f(v).
struct ExtensionProbe {
  double u = 0.0;
  double v = 0.0;
};

struct ExtensionProbeResult {
  double u = 0.0;
  double v = 0.0;
  double residual = 0.0;  // |f(u+v) - f(u) - f(v)|
  double nearest = 0.0;   // distance from u to the closest relation t^2
  double bound = 0.0;
  bool passed = false;
};

struct DenseExtensionReport {
  std::size_t relations_checked = 0;
  std::size_t families = 0;  // distinct s values
  double max_t_gap = 0.0;
  double max_relation_residual = 0.0;
  std::vector<ExtensionProbeResult> probes;
  bool extension_ok = false;
  bool certification_applicable = false;
  std::optional<QuadraticCertificate> certificate;

  [[nodiscard]] bool passed() const noexcept {
    return extension_ok && certificate && certificate->certified;
  }
};

/// 1. Every relation family must cover [0, s] with t-gaps <= continuity_modulus
///    (DensityGapTooLarge).
/// 2. g(s) = g(t) + g(u) within 1e-9 * max(1, g(s)) (RelationViolated).
/// 3. For each probe, with s^2 = u + v a relation family (PreconditionNotMet
///    otherwise) and x the relation point t^2 closest to u, continuity of f
///    with Lipschitz constant `lipschitz` bounds the residual by
///    2 * lipschitz * |x - u|, which is at most 2 * lipschitz * 2 s * modulus.
/// 4. Quadratic certification with `certification_tol` on {0, 1/64, ..., s_max}
///    for closed-form g, or on the sampled norms up to s_max otherwise.
[[nodiscard]] DenseExtensionReport dense_extension_check(const ProfileFunction& g, const RelationSet& relations,
                                                         double continuity_modulus, double lipschitz,
                                                         const std::vector<ExtensionProbe>& probes,
                                                         double certification_tol = 1e-9);

}  // namespace rwl
