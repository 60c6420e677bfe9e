#include "rwl/funceq.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rwl/error.hpp"

namespace rwl {

namespace {

double scaled(double residual, double reference) { return std::abs(residual) / std::max(1.0, std::abs(reference)); }

}  // namespace

double counterexample_g(double epsilon, double s) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, 1), got " << epsilon;
    throw Error(ErrorCode::EpsilonOutOfRange, msg.str());
  }
  if (!(s >= 0.0)) throw Error(ErrorCode::OutOfRange, "g_eps is defined on s >= 0");
  if (s == 0.0) return 0.0;
  const double log2s = std::log(s) / std::numbers::ln2;
  return s * s * (1.0 + epsilon * std::sin(4.0 * std::numbers::pi * log2s));
}

EquationReport check_functional_equation(const ProfileFunction& g, const std::vector<NormPair>& pairs) {
  EquationReport report;
  for (const auto& [r1, r2] : pairs) {
    const double combined = std::sqrt(r1 * r1 + r2 * r2);
    const double lhs = g(combined);
    const double residual = std::abs(lhs - g(r1) - g(r2));
    if (residual > report.max_residual || report.pairs_checked == 0) {
      report.max_residual = residual;
      report.worst_pair = {r1, r2};
    }
    report.max_scaled_residual = std::max(report.max_scaled_residual, scaled(residual, lhs));
    ++report.pairs_checked;
  }
  return report;
}

std::vector<double> uniform_grid(double hi, double step) {
  if (!(step > 0.0) || !(hi >= 0.0)) throw Error(ErrorCode::OutOfRange, "grid needs step > 0 and hi >= 0");
  const auto n = static_cast<long long>(std::floor(hi / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * step);
  return grid;
}

std::vector<NormPair> compatible_pairs(const ProfileFunction& g, const std::vector<double>& grid) {
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  const double top = sorted.empty() ? 0.0 : sorted.back();
  std::vector<NormPair> pairs;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i; j < sorted.size(); ++j) {
      const double combined = std::sqrt(sorted[i] * sorted[i] + sorted[j] * sorted[j]);
      if (combined > top * (1.0 + 1e-12)) break;
      if (g.defined_at(combined)) pairs.emplace_back(sorted[i], sorted[j]);
    }
  }
  return pairs;
}

EqualSplitReport check_equal_split_relation(const ProfileFunction& g, const std::vector<double>& samples) {
  EqualSplitReport report;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (double s : samples) {
    const double residual = std::abs(g(s) - 2.0 * g(s * inv_sqrt2));
    if (residual > report.max_residual || report.samples == 0) {
      report.max_residual = residual;
      report.worst_s = s;
    }
    ++report.samples;
  }
  return report;
}

Rational Rational::make(std::int64_t p, std::int64_t q) {
  if (q <= 0 || p < 0) throw Error(ErrorCode::OutOfRange, "rationals here are non-negative with q >= 1");
  const auto g = std::gcd(p, q);
  return {p / g, q / g};
}

std::vector<Rational> rational_grid(std::int64_t max_denominator, std::int64_t upper) {
  std::vector<Rational> out;
  for (std::int64_t q = 1; q <= max_denominator; ++q) {
    for (std::int64_t p = 0; p <= upper * q; ++p) {
      if (std::gcd(p, q) == 1) out.push_back({p, q});
    }
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a.p * b.q < b.p * a.q; });
  return out;
}

CauchyReport cauchy_linear_check(const std::map<Rational, double>& f_samples, const std::vector<CauchyProbe>& probes) {
  CauchyReport report;
  report.samples = f_samples.size();
  std::int64_t bound = 1;
  std::int64_t upper_num = 0;  // largest p/q sampled, as a floor
  for (const auto& [r, value] : f_samples) {
    if (!(value >= 0.0)) {
      std::ostringstream msg;
      msg << "f(" << r.p << "/" << r.q << ") = " << value;
      throw Error(ErrorCode::NegativeValue, msg.str());
    }
    bound = std::max(bound, r.q);
    upper_num = std::max(upper_num, r.p / r.q);
  }
  report.denominator_bound = bound;

  const auto at = [&](std::int64_t p, std::int64_t q) -> std::optional<double> {
    const auto it = f_samples.find(Rational::make(p, q));
    if (it == f_samples.end()) return std::nullopt;
    return it->second;
  };
  const auto one = at(1, 1);
  if (!one) throw Error(ErrorCode::MissingSample, "f(1) is required to fix c");
  report.c = *one;

  for (std::int64_t d = 1; d <= bound; ++d) {
    const std::int64_t top = (upper_num + 1) * d;
    for (std::int64_t a = 1; a <= top; ++a) {
      const auto fa = at(a, d);
      if (!fa) continue;
      for (std::int64_t b = a; a + b <= top; ++b) {
        const auto fb = at(b, d);
        if (!fb) continue;
        const auto fab = at(a + b, d);
        if (!fab) continue;
        ++report.additivity_checks;
        const double residual = *fab - *fa - *fb;
        if (std::abs(residual) > 1e-10 * std::max(1.0, *fab)) {
          std::ostringstream msg;
          msg << "f(" << a << "/" << d << " + " << b << "/" << d << ") - f(" << a << "/" << d << ") - f(" << b << "/"
              << d << ") = " << residual;
          throw Error(ErrorCode::AdditivityViolation, msg.str());
        }
      }
    }
  }

  for (const auto& [r, value] : f_samples) {
    report.max_deviation = std::max(report.max_deviation, std::abs(value - report.c * r.value()));
  }

  for (const auto& probe : probes) {
    if (!(probe.x >= 0.0)) throw Error(ErrorCode::OutOfRange, "probe points must be >= 0");
    const auto lo = static_cast<std::int64_t>(std::floor(probe.x * static_cast<double>(bound)));
    const auto hi = static_cast<std::int64_t>(std::ceil(probe.x * static_cast<double>(bound)));
    const auto f_lo = at(lo, bound);
    const auto f_hi = at(hi, bound);
    if (!f_lo || !f_hi) {
      std::ostringstream msg;
      msg << "no rational bracket for probe " << probe.x;
      throw Error(ErrorCode::MissingSample, msg.str());
    }
    CauchyProbeResult result;
    result.x = probe.x;
    result.lower = Rational::make(lo, bound);
    result.upper = Rational::make(hi, bound);
    result.bracket_width = report.c * (result.upper.value() - result.lower.value());
    if (probe.value) {
      const double slack = 1e-10 * std::max(1.0, *f_hi);
      result.contained = *probe.value >= *f_lo - slack && *probe.value <= *f_hi + slack;
    }
    report.probes.push_back(result);
  }
  return report;
}

QuadraticCertificate certify_quadratic(const ProfileFunction& g, const std::vector<double>& grid, double tol) {
  for (double r : grid) {
    if (!(g(r) >= 0.0)) {
      std::ostringstream msg;
      msg << "g(" << r << ") < 0";
      throw Error(ErrorCode::NegativeValue, msg.str());
    }
  }
  QuadraticCertificate cert;
  const auto pairs = compatible_pairs(g, grid);
  const auto eq = check_functional_equation(g, pairs);
  cert.pairs_checked = eq.pairs_checked;
  cert.equation_residual = eq.max_scaled_residual;
  if (eq.max_scaled_residual > tol) {
    std::ostringstream msg;
    msg << "functional equation residual " << eq.max_scaled_residual << " exceeds tol " << tol << " at ("
        << eq.worst_pair.first << ", " << eq.worst_pair.second << ")";
    throw Error(ErrorCode::PreconditionNotMet, msg.str());
  }
  cert.c = g(1.0);
  cert.threshold = std::max(tol * 100.0, 1e-6);
  for (double r : grid) {
    const double model = cert.c * r * r;
    cert.max_relative_error = std::max(cert.max_relative_error, scaled(g(r) - model, model));
  }
  cert.certified = cert.max_relative_error <= cert.threshold;
  return cert;
}

void RelationSet::add(Relation r) {
  if (!(r.s >= 0.0 && r.t >= 0.0 && r.u >= 0.0)) throw Error(ErrorCode::OutOfRange, "relation norms must be >= 0");
  if (std::abs(r.t * r.t + r.u * r.u - r.s * r.s) > 1e-10) {
    std::ostringstream msg;
    msg << "t^2 + u^2 != s^2 for (" << r.s << ", " << r.t << ", " << r.u << ")";
    throw Error(ErrorCode::PreconditionNotMet, msg.str());
  }
  relations_.push_back(r);
}

RelationSet RelationSet::rational(const std::vector<double>& s_values, int denominator_bound,
                                  const std::function<bool(double)>& skip) {
  RelationSet set;
  const auto fractions = rational_grid(denominator_bound, 1);
  for (double s : s_values) {
    if (skip && skip(s)) continue;
    for (const auto& f : fractions) {
      const double ratio = f.value();
      const double t = s * ratio;
      const double u = s * std::sqrt(std::max(0.0, (1.0 - ratio) * (1.0 + ratio)));
      if (skip && (skip(t) || skip(u))) continue;
      set.add({s, t, u});
    }
  }
  return set;
}

RelationSet RelationSet::equal_split(const std::vector<double>& s_values) {
  RelationSet set;
  for (double s : s_values) {
    const double t = s / std::numbers::sqrt2;
    set.add({s, t, t});
  }
  return set;
}

RelationSet RelationSet::from_squared_shares(double s, const std::vector<double>& shares) {
  RelationSet set;
  const double total = s * s;
  for (double x : shares) {
    if (x < -1e-12 || x > total * (1.0 + 1e-12) + 1e-12) {
      throw Error(ErrorCode::TargetOutOfRange, "share outside [0, s^2]");
    }
    const double clamped = std::clamp(x, 0.0, total);
    set.add({s, std::sqrt(clamped), std::sqrt(total - clamped)});
  }
  return set;
}

DenseExtensionReport dense_extension_check(const ProfileFunction& g, const RelationSet& relations,
                                           double continuity_modulus, double lipschitz,
                                           const std::vector<ExtensionProbe>& probes, double certification_tol) {
  if (relations.empty()) throw Error(ErrorCode::PreconditionNotMet, "no relations supplied");
  if (!(continuity_modulus > 0.0) || !(lipschitz >= 0.0)) {
    throw Error(ErrorCode::OutOfRange, "continuity modulus must be > 0 and Lipschitz bound >= 0");
  }

  // Families keyed by quantized s; the stored points are t^2 in [0, s^2].
  struct Family {
    double s = 0.0;
    std::vector<double> ts;
    std::vector<double> squares;
  };
  std::map<std::int64_t, Family> families;
  DenseExtensionReport report;
  for (const auto& r : relations.relations()) {
    auto& fam = families[quantize(r.s)];
    fam.s = r.s;
    // A relation with (t, u) also certifies (u, t).
    fam.ts.push_back(r.t);
    fam.ts.push_back(r.u);
    fam.squares.push_back(r.t * r.t);
    fam.squares.push_back(r.u * r.u);
  }
  report.families = families.size();

  double s_max = 0.0;
  for (auto& [key, fam] : families) {
    s_max = std::max(s_max, fam.s);
    std::sort(fam.ts.begin(), fam.ts.end());
    std::sort(fam.squares.begin(), fam.squares.end());
    double gap = fam.ts.front();
    for (std::size_t i = 1; i < fam.ts.size(); ++i) gap = std::max(gap, fam.ts[i] - fam.ts[i - 1]);
    gap = std::max(gap, fam.s - fam.ts.back());
    report.max_t_gap = std::max(report.max_t_gap, gap);
    if (gap > continuity_modulus) {
      std::ostringstream msg;
      msg << "relations at s = " << fam.s << " leave a gap of " << gap << " > " << continuity_modulus;
      throw Error(ErrorCode::DensityGapTooLarge, msg.str());
    }
  }

  for (const auto& r : relations.relations()) {
    const double gs = g(r.s);
    const double residual = gs - g(r.t) - g(r.u);
    const double scaled_residual = scaled(residual, gs);
    report.max_relation_residual = std::max(report.max_relation_residual, scaled_residual);
    ++report.relations_checked;
    if (scaled_residual > 1e-9) {
      std::ostringstream msg;
      msg << "g(" << r.s << ") - g(" << r.t << ") - g(" << r.u << ") = " << residual;
      throw Error(ErrorCode::RelationViolated, msg.str());
    }
  }

  const auto f = [&](double x) { return g(std::sqrt(x)); };
  report.extension_ok = true;
  for (const auto& probe : probes) {
    if (!(probe.u >= 0.0 && probe.v >= 0.0)) throw Error(ErrorCode::OutOfRange, "probe coordinates must be >= 0");
    const double total = probe.u + probe.v;
    const auto it = families.find(quantize(std::sqrt(total)));
    if (it == families.end()) {
      std::ostringstream msg;
      msg << "probe (" << probe.u << ", " << probe.v << ") is not covered by a relation family";
      throw Error(ErrorCode::PreconditionNotMet, msg.str());
    }
    const auto& squares = it->second.squares;
    const auto pos = std::lower_bound(squares.begin(), squares.end(), probe.u);
    double nearest = std::numeric_limits<double>::infinity();
    if (pos != squares.end()) nearest = std::min(nearest, *pos - probe.u);
    if (pos != squares.begin()) nearest = std::min(nearest, probe.u - *std::prev(pos));

    ExtensionProbeResult result;
    result.u = probe.u;
    result.v = probe.v;
    const double ft = f(total);
    result.residual = std::abs(ft - f(probe.u) - f(probe.v));
    result.nearest = nearest;
    result.bound = 2.0 * lipschitz * nearest + 1e-12 * std::max(1.0, std::abs(ft));
    result.passed = result.residual <= result.bound;
    report.extension_ok = report.extension_ok && result.passed;
    report.probes.push_back(result);
  }

  try {
    std::vector<double> grid;
    if (g.is_closed_form()) {
      grid = uniform_grid(s_max, 1.0 / 64.0);
    } else {
      for (const auto& [key, value] : g.samples()) {
        const double r = static_cast<double>(key) * kProfileQuantum;
        if (r <= s_max * (1.0 + 1e-12)) grid.push_back(r);
      }
    }
    report.certificate = certify_quadratic(g, grid, certification_tol);
    report.certification_applicable = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionNotMet) throw;
    report.certification_applicable = false;
  }
  return report;
}

}  // namespace rwl
