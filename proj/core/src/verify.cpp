#include "rwl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rwl/continuation.hpp"
#include "rwl/error.hpp"
#include "rwl/funceq.hpp"
#include "rwl/profiles.hpp"
#include "rwl/random.hpp"
#include "rwl/record_model.hpp"
#include "rwl/saturation.hpp"
#include "rwl/scenario_io.hpp"
#include "rwl/scenarios.hpp"

namespace rwl {

namespace {

StateVector random_state(Rng& rng, std::size_t dim) {
  const double scale = rng.uniform(0.2, 3.0);
  std::vector<Complex> amps(dim);
  for (auto& a : amps) a = scale * Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return StateVector(std::move(amps));
}

Sector random_sector(Rng& rng, std::size_t dim, std::size_t k) {
  std::vector<StateVector> vs;
  for (std::size_t i = 0; i < k; ++i) vs.push_back(random_state(rng, dim));
  return Sector::span(vs);
}

template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

RunReport timed(std::string name, int exit_code, const std::function<void(RunReport&)>& body) {
  RunReport report;
  report.suite = std::move(name);
  report.exit_code = exit_code;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(report);
  } catch (const std::exception& e) {
    report.add("unexpected-exception", "plumbing", false, 0.0, e.what());
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::set<long long> quantized(const std::vector<double>& xs, double quantum) {
  std::set<long long> out;
  for (double x : xs) out.insert(std::llround(x / quantum));
  return out;
}

}  // namespace

RunReport run_framework_suite(std::uint64_t seed) {
  return timed("framework", kExitFramework, [seed](RunReport& r) {
    Rng rng = Rng(seed).fork(1);

    {
      const auto b = orthonormalize({StateVector{1.0, 1.0}, StateVector{1.0, 0.0}});
      const double h = 1.0 / std::numbers::sqrt2;
      const double dev = std::max({std::abs(b[0][0] - h), std::abs(b[0][1] - h), std::abs(b[1][0] - h),
                                   std::abs(b[1][1] + h)});
      r.add("orthonormalize-example", "plumbing", b.size() == 2 && dev <= 1e-12, dev);
    }

    {
      double worst = 0.0;
      double worst_idem = 0.0;
      for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = 2 + rng.index(7);
        const std::size_t k = 2 + rng.index(dim - 1);
        const auto psi = random_state(rng, dim);
        const auto sector = random_sector(rng, dim, k);
        const double s = project(psi, sector).norm();
        const auto ref = make_binary_refinement(sector, psi, rng.uniform(0.0, s));
        const auto p = pythagoras_check(psi, ref);
        worst = std::max(worst, std::abs(p.residual()) / std::max(1.0, psi.norm_squared()));
        const auto once = project(psi, sector);
        worst_idem = std::max(worst_idem, (project(once, sector) - once).norm());
      }
      r.add("pythagoras-random-refinements", "projected-components-pythagoras", worst <= 1e-9, worst);
      r.add("projection-idempotent", "plumbing", worst_idem <= 1e-10, worst_idem);
    }

    {
      double worst = 0.0;
      for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = 2 + rng.index(5);
        const auto psi = random_state(rng, dim);
        const auto sector = random_sector(rng, dim, 2 + rng.index(dim - 1));
        const double s = project(psi, sector).norm();
        const double r1 = rng.uniform(0.0, s);
        const auto ref = make_binary_refinement(sector, psi, r1);
        const double left = project(psi, ref.left()).norm();
        const double right = project(psi, ref.right()).norm();
        const double r2 = std::sqrt(std::max(0.0, s * s - r1 * r1));
        worst = std::max({worst, std::abs(left - r1), std::abs(right - r2)});
      }
      r.add("saturation-witness-round-trip", "binary-saturation", worst <= 1e-9, worst, "1000 random (s, r1)");
    }

    {
      const auto psi = StateVector{0.6, 0.8, 0.0};
      RefinementClass cls{RichnessKind::EqualSplitOnly, 0, Sector::full(3), psi};
      const auto norms = admissible_left_norms(cls, 0.1);
      const auto got = quantized(norms, 1e-12);
      const auto want = quantized({0.0, 1.0 / std::numbers::sqrt2, 1.0}, 1e-12);
      r.add("equal-split-only-left-norms", "equal-split-refinement-class", got == want, 0.0);
    }

    {
      RecordLayer spin(StateVector{0.6, 0.8});
      spin.add_sector("up", Sector::coordinate(2, {0}), "spin").add_sector("down", Sector::coordinate(2, {1}), "spin");
      r.add("spin-up-is-robust", "robust-record-sector", validate_sector(spin, "up").passed());
      RecordLayer bad(StateVector{0.6, 0.8});
      bad.add_sector("a", Sector::coordinate(2, {0}), "x")
          .add_sector("b", Sector::span({StateVector{1.0, 1.0}}), "x");
      const auto v = validate_sector(bad, "a");
      r.add("non-orthogonal-exclusive-rejected", "robust-record-sector", !v.checks.front().passed);
    }

    {
      std::size_t violations = 0;
      double worst = 0.0;
      std::size_t refinements = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        const auto model = generate_random_model(rng);
        const auto mu = Valuation::from_model(model);
        const auto refined = model.refined_sectors();
        for (const auto& id : refined) {
          if (!check_partition(model, id).passed()) ++violations;
        }
        const auto st = check_refinement_stability(model, mu, refined);
        worst = std::max(worst, st.max_residual);
        if (!st.passed()) ++violations;
        refinements += refined.size();
      }
      r.add("partition-random-models", "continuation-partition", violations == 0, static_cast<double>(violations),
            std::to_string(refinements) + " refinements over 1000 models");
      r.add("stability-random-models", "refinement-stability", worst <= kStabilityTolerance, worst);
    }

    {
      ContinuationModel m("R");
      m.refine("R", "A", "B");
      m.attach({"x", "A", 0.4}).attach({"y", "B", 0.6});
      auto weights = induced_weights(m, Valuation::from_model(m));
      weights["R"] += 0.25;
      const auto st = check_refinement_stability(m, weights, {"R"});
      r.add("tampered-weight-detected", "refinement-stability",
            !st.passed() && std::abs(st.max_residual - 0.25) <= 1e-15, st.max_residual);

      const auto both = ContinuationModel::assemble_unchecked("R", {{"R", "A", "B"}}, {{"x", "A", 1.0}, {"x", "B", 1.0}});
      const auto orphan = ContinuationModel::assemble_unchecked("R", {{"R", "A", "B"}}, {{"x", "A", 1.0}, {"o", "R", 1.0}});
      const auto v1 = check_partition(both, "R");
      const auto v2 = check_partition(orphan, "R");
      r.add("partition-violations-detected", "continuation-partition",
            !v1.disjoint && v1.covered && v2.disjoint && !v2.covered);
    }

    {
      ContinuationModel m("R");
      m.refine("R", "A", "B").refine("A", "S1", "S2").refine("B", "S3", "S4");
      m.attach({"c1", "S1", 0.40}).attach({"c2", "S2", 0.30}).attach({"c3", "S3", 0.20}).attach({"c4", "S4", 0.10});
      const auto mu = Valuation::from_model(m);
      const double root = induced_weight(m, mu, "R");
      const double a = induced_weight(m, mu, "A");
      const double b = induced_weight(m, mu, "B");
      const double dev = std::max({std::abs(root - 1.0), std::abs(a - 0.7), std::abs(b - 0.3)});
      r.add("worked-induced-weights", "induced-record-weight", dev <= 1e-12, dev, "W(R)=1, W({1,2})=0.7, W({3,4})=0.3");
    }

    {
      std::vector<RefinementClass> classes;
      std::size_t equal_pairs_expected = 0;
      std::size_t violations = 0;
      std::size_t pairs = 0;
      for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim_a = 2 + rng.index(4);
        const std::size_t dim_b = 2 + rng.index(4);
        const auto psi_a = random_state(rng, dim_a);
        const auto sec_a = random_sector(rng, dim_a, 2 + rng.index(dim_a - 1));
        auto psi_b = random_state(rng, dim_b);
        const auto sec_b = random_sector(rng, dim_b, 2 + rng.index(dim_b - 1));
        if (trial % 2 == 0) {
          // Rescale so both components share a norm.
          psi_b *= project(psi_a, sec_a).norm() / project(psi_b, sec_b).norm();
          ++equal_pairs_expected;
        }
        const auto report = check_norm_classification(
            {RefinementClass{RichnessKind::Saturated, 0, sec_a, psi_a}, RefinementClass{RichnessKind::Saturated, 0, sec_b, psi_b}},
            0.1);
        violations += report.violations.size();
        pairs += report.pairs_checked;
      }
      r.add("norm-classification-random-pairs", "norm-determines-profile", violations == 0,
            static_cast<double>(violations), std::to_string(pairs) + " pairs, " + std::to_string(equal_pairs_expected) +
                                                 " with equal norms");
    }

    {
      bool raised = false;
      for (int trial = 0; trial < 20; ++trial) {
        const double c = rng.uniform(0.0, 5.0);
        std::vector<std::pair<double, double>> obs;
        for (int k = 0; k < 50; ++k) {
          const double s = 0.05 * (k % 25);
          obs.emplace_back(s, c * s * s);
        }
        raised = raised || error_of([&] { (void)extract_profile_function(obs); }).has_value();
      }
      r.add("quadratic-weights-are-norm-reduced", "norm-reduced-weight", !raised);
      const auto code = error_of([] { (void)extract_profile_function({{0.5, 0.25}, {0.5, 0.30}}); });
      r.add("unequal-weights-on-equal-norms-rejected", "internal-equivalence",
            code == ErrorCode::InternalEquivalenceViolation);
    }
  });
}

RunReport run_funceq_suite(std::uint64_t seed) {
  return timed("funceq", kExitFunceq, [seed](RunReport& r) {
    Rng rng = Rng(seed).fork(2);
    const auto grid = uniform_grid(4.0, 1.0 / 64.0);

    for (double c : {0.0, 0.5, 1.0, 3.0}) {
      const auto g = ProfileFunction::quadratic(c);
      const auto eq = check_functional_equation(g, compatible_pairs(g, grid));
      r.add("quadratic-satisfies-equation c=" + fmt(c), "quadratic-functional-equation", eq.max_residual <= 1e-12,
            eq.max_residual, std::to_string(eq.pairs_checked) + " grid pairs");
      const auto cert = certify_quadratic(g, grid, 1e-12);
      r.add("quadratic-certified c=" + fmt(c), "quadratic-uniqueness",
            cert.certified && std::abs(cert.c - c) <= 1e-12, std::abs(cert.c - c));
    }

    const std::vector<std::pair<std::string, ProfileFunction>> others{
        {"r", ProfileFunction::closed_form("r", [](double x) { return x; })},
        {"r^3", ProfileFunction::closed_form("r^3", [](double x) { return x * x * x; })},
        {"g_eps(0.25)", ProfileFunction::counterexample(0.25)},
        {"g_eps(0.5)", ProfileFunction::counterexample(0.5)},
    };
    for (const auto& [name, g] : others) {
      const auto eq = check_functional_equation(g, compatible_pairs(g, grid));
      const auto code = error_of([&] { (void)certify_quadratic(g, grid, 1e-9); });
      r.add("non-quadratic-violates " + name, "quadratic-uniqueness",
            eq.max_residual >= 0.05 && code == ErrorCode::PreconditionNotMet, eq.max_residual,
            "certification not applicable");
    }

    {
      const auto g = ProfileFunction::counterexample(0.5);
      std::vector<double> samples;
      for (int i = 0; i < 10000; ++i) samples.push_back(10.0 * (1.0 - rng.uniform()));
      const auto split = check_equal_split_relation(g, samples);
      r.add("g_eps-equal-split-relation", "equal-split-counterexample", split.max_residual <= 1e-12, split.max_residual,
            "10^4 random s in (0, 10]");
      const auto eq = check_functional_equation(g, {{0.6, 0.8}});
      r.add("g_eps-violates-full-equation", "equal-split-counterexample", eq.max_residual >= 0.2, eq.max_residual,
            "at (0.6, 0.8)");
      double worst = 0.0;
      for (double s : samples) worst = std::min(worst, g(s) - 0.5 * s * s);
      r.add("g_eps-positive", "equal-split-counterexample", worst >= 0.0, worst, "g_eps(s) >= (1 - eps) s^2");
    }

    {
      std::map<Rational, double> linear;
      std::map<Rational, double> zero;
      std::map<Rational, double> bumped;
      for (const auto& q : rational_grid(64, 2)) {
        linear[q] = 3.0 * q.value();
        zero[q] = 0.0;
        bumped[q] = q.value() + (q.q == 1 ? 0.0 : 0.01);
      }
      std::vector<CauchyProbe> probes;
      for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(0.0, 2.0);
        probes.push_back({x, 3.0 * x});
      }
      const auto lin = cauchy_linear_check(linear, probes);
      const bool contained = std::all_of(lin.probes.begin(), lin.probes.end(),
                                         [](const CauchyProbeResult& p) { return p.contained.value_or(false); });
      r.add("cauchy-linear-table", "cauchy-linearity", lin.c == 3.0 && lin.max_deviation <= 1e-10 && contained,
            lin.max_deviation, std::to_string(lin.additivity_checks) + " additivity checks");
      const auto z = cauchy_linear_check(zero, {});
      r.add("cauchy-zero-table", "cauchy-linearity", z.c == 0.0 && z.max_deviation == 0.0);
      const auto code = error_of([&] { (void)cauchy_linear_check(bumped, {}); });
      r.add("cauchy-violation-detected", "cauchy-linearity", code == ErrorCode::AdditivityViolation);
    }

    {
      const auto demo = dense_saturation_demo(128);
      const double c_err = demo.quadratic.certificate ? std::abs(demo.quadratic.certificate->c - 1.0) : 1.0;
      r.add("dense-extension-quadratic", "dense-saturation-continuity", demo.quadratic.passed() && c_err <= 1e-9, c_err,
            std::to_string(demo.quadratic.relations_checked) + " relations");
      r.add("dense-extension-discontinuous-control", "dense-saturation-continuity",
            !demo.control.passed() && demo.control_failures > 0 && demo.control_fails_only_inside_window,
            static_cast<double>(demo.control_failures), "fails at probes inside the jump window");
      r.add("dense-extension-equal-split-not-dense", "dense-saturation-continuity",
            demo.equal_split_error == ErrorCode::DensityGapTooLarge);
    }

    {
      const auto g = ProfileFunction::quadratic(1.7);
      const auto base = certify_quadratic(g, grid, 1e-12);
      bool ok = true;
      double worst = 0.0;
      for (int i = 0; i < 10; ++i) {
        const double lambda = rng.uniform(0.1, 10.0);
        const auto scaled = certify_quadratic(g.scaled(lambda), grid, 1e-12);
        const double err = std::abs(scaled.c - lambda * base.c) / (lambda * base.c);
        worst = std::max(worst, err);
        ok = ok && scaled.certified == base.certified;
      }
      r.add("certification-scale-equivariant", "quadratic-uniqueness", ok && worst <= 1e-15, worst);
    }
  });
}

RunReport run_saturation_suite(std::uint64_t seed) {
  return timed("saturation", kExitSaturation, [seed](RunReport& r) {
    Rng rng = Rng(seed).fork(3);

    {
      const auto sums = realized_sums({0.40, 0.30, 0.20, 0.10});
      const auto want = quantized({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, kSumQuantum);
      r.add("worked-realized-sums", "worked-subset-sums", quantized(sums, kSumQuantum) == want && sums.size() == 11, 0.0,
            std::to_string(sums.size()) + " sums");
      const auto pick = subset_sum_greedy({0.40, 0.30, 0.20, 0.10}, 0.65);
      r.add("worked-greedy-0.65", "local-density-criterion",
            pick.indices == std::vector<std::size_t>{0, 2} && std::abs(pick.gap - 0.05) <= 1e-12, pick.gap);
    }

    {
      std::vector<Decomposition> levels;
      for (std::size_t n : {4, 16, 64, 256, 1024}) levels.push_back(Decomposition::uniform(n, 1.0));
      const auto cert = density_certificate(levels, default_targets(1.0));
      bool ok = cert.valid && cert.converging;
      double worst = 0.0;
      for (const auto& l : cert.levels) {
        ok = ok && l.worst_gap < 1.0 / static_cast<double>(l.pieces);
        worst = std::max(worst, l.worst_gap * static_cast<double>(l.pieces));
      }
      r.add("uniform-levels-gap-below-1/N", "local-density-criterion", ok, worst, "max gap * N");
    }

    {
      std::size_t failures = 0;
      std::size_t mismatched_optimum = 0;
      double worst_ratio = 0.0;
      for (int list = 0; list < 200; ++list) {
        const std::size_t n = 1 + rng.index(20);
        std::vector<double> w(n);
        for (auto& x : w) x = rng.uniform(0.0, 1.0);
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        const double wmax = *std::max_element(w.begin(), w.end());
        std::vector<double> targets(100);
        for (auto& x : targets) x = rng.uniform(0.0, total);
        const auto optimal = subset_sum_exhaustive(w, targets);
        for (std::size_t t = 0; t < targets.size(); ++t) {
          const double x = targets[t];
          const auto greedy = subset_sum_greedy(w, x);
          const auto& best = optimal[t];
          if (!(greedy.achieved <= x && greedy.gap < wmax && best.gap < wmax && greedy.achieved <= best.achieved + 1e-12)) {
            ++failures;
          }
          if (best.achieved > greedy.achieved + 1e-12) ++mismatched_optimum;
          worst_ratio = std::max(worst_ratio, greedy.gap / wmax);
        }
      }
      r.add("greedy-gap-below-max-weight", "local-density-criterion", failures == 0, worst_ratio,
            "200 lists x 100 targets; exhaustive optimum beats greedy in " + std::to_string(mismatched_optimum) + " cases");
    }

    {
      std::vector<Decomposition> levels;
      for (std::size_t n : {2, 4, 8}) {
        std::vector<double> w{0.9};
        for (std::size_t i = 0; i < n; ++i) w.push_back(0.1 / static_cast<double>(n));
        levels.emplace_back(std::move(w), 1.0);
      }
      const auto cert = density_certificate(levels, default_targets(1.0));
      r.add("dominant-weight-not-dense", "local-density-criterion", cert.valid && !cert.converging,
            cert.levels.back().eps_share);
    }

    {
      // Interval-cover audit: realized norms sqrt(sum) leave no hole wider than sqrt(eps W).
      const auto level = Decomposition::uniform(256, 1.0);
      std::vector<double> norms;
      for (double x : default_targets(1.0, 0.001)) norms.push_back(std::sqrt(subset_sum_greedy(level.weights(), x).achieved));
      std::sort(norms.begin(), norms.end());
      double hole = norms.front();
      for (std::size_t i = 1; i < norms.size(); ++i) hole = std::max(hole, norms[i] - norms[i - 1]);
      hole = std::max(hole, 1.0 - norms.back());
      r.add("sqrt-preserves-density", "local-density-criterion", hole <= std::sqrt(level.max_weight() + 0.001) + 1e-12,
            hole);
    }
  });
}

RunReport run_scenario_suite(std::uint64_t seed) {
  return timed("scenario", kExitScenario, [seed](RunReport& r) {
    Rng rng = Rng(seed).fork(4);

    {
      double worst = 0.0;
      bool structure = true;
      for (int i = 0; i < 100; ++i) {
        const double theta = rng.uniform(0.0, std::numbers::pi / 2);
        const Complex alpha = std::polar(std::cos(theta), rng.uniform(0.0, 2 * std::numbers::pi));
        const Complex beta = std::polar(std::sin(theta), rng.uniform(0.0, 2 * std::numbers::pi));
        const Complex phase = std::polar(1.0, rng.uniform(0.0, 2 * std::numbers::pi));
        const auto a = spin_demo(alpha, beta);
        const auto b = spin_demo(phase * alpha, phase * beta);
        structure = structure && a.sectors_valid && a.partition_ok && a.stability_ok;
        worst = std::max({worst, std::abs(a.up - std::norm(alpha)), std::abs(a.down - std::norm(beta)),
                          std::abs(a.up + a.down - 1.0), std::abs(a.up - b.up), std::abs(a.down - b.down)});
      }
      r.add("spin-born-weights", "spin-example", structure && worst <= 1e-10, worst, "100 random (alpha, beta)");
    }

    {
      const StateVector psi{std::sqrt(0.4), std::sqrt(0.3), std::sqrt(0.2), std::sqrt(0.1)};
      std::vector<Sector> family;
      for (std::size_t i = 0; i < 4; ++i) family.push_back(Sector::coordinate(4, {i}));
      const auto table = normalized_weights(psi, family);
      const std::vector<double> want{0.4, 0.3, 0.2, 0.1};
      double dev = std::abs(table.sum - 1.0);
      for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(table.weights[i] - want[i]));
      r.add("born-normalized-weights", "born-normalization", dev <= 1e-9, dev);
      const auto code = error_of([&] {
        (void)normalized_weights(psi, {Sector::coordinate(4, {0}), Sector::coordinate(4, {1}), Sector::coordinate(4, {2})});
      });
      r.add("incomplete-decomposition-rejected", "born-normalization", code == ErrorCode::IncompleteDecomposition);
    }

    {
      CoarseRecordOptions forced{4, 7, SubrecordProfile::Random, std::vector<double>{0.4, 0.3, 0.2, 0.1}};
      const auto rep = coarse_record_demo(forced);
      const auto want = quantized({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, kSumQuantum);
      r.add("coarse-record-worked-4", "worked-subset-sums",
            rep.realized_sums && quantized(*rep.realized_sums, kSumQuantum) == want);

      CoarseRecordOptions random{16, seed, SubrecordProfile::Random, std::nullopt};
      const auto rr = coarse_record_demo(random);
      r.add("coarse-record-random-16", "coarse-record-schematic", rr.passed(), std::abs(rr.recovered_c - 1.0),
            "|c - 1|");
    }

    for (const auto& [name, text] : builtin_scenarios()) {
      const auto result = run_scenario(parse_scenario(text, name));
      std::string failed;
      for (const auto& c : result.checks) {
        if (!c.passed) failed += c.id + " ";
      }
      r.add("scenario-file " + name, name == "spin" ? "spin-example" : "worked-subset-sums", result.passed(), 0.0,
            failed.empty() ? std::to_string(result.checks.size()) + " checks" : "failed: " + failed);
    }
  });
}

VerifyReport run_verify(std::uint64_t seed, bool concurrent) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.seed = seed;
  using Suite = RunReport (*)(std::uint64_t);
  const std::vector<Suite> suites{run_framework_suite, run_funceq_suite, run_saturation_suite, run_scenario_suite};
  if (concurrent) {
    std::vector<std::future<RunReport>> pending;
    for (auto suite : suites) pending.push_back(std::async(std::launch::async, suite, seed));
    for (auto& p : pending) report.suites.push_back(p.get());
  } else {
    for (auto suite : suites) report.suites.push_back(suite(seed));
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rwl
