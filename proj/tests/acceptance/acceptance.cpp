// Acceptance criteria runner: one PASS/FAIL line per criterion, exit 0 iff
// all pass. Each criterion also has a wall-time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include <unistd.h>

#include "cli.hpp"
#include "rwl/continuation.hpp"
#include "rwl/error.hpp"
#include "rwl/funceq.hpp"
#include "rwl/profiles.hpp"
#include "rwl/random.hpp"
#include "rwl/saturation.hpp"
#include "rwl/scenarios.hpp"

using namespace rwl;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double budget_ms;
  std::function<Outcome()> run;
};

std::string num(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

std::set<long long> on_grid(const std::vector<double>& xs) {
  std::set<long long> out;
  for (double x : xs) out.insert(std::llround(x / 1e-12));
  return out;
}

StateVector random_state(Rng& rng, std::size_t dim) {
  std::vector<Complex> a(dim);
  for (auto& x : a) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return StateVector(a);
}

Outcome worked_subset_sums() {
  const auto sums = realized_sums({0.40, 0.30, 0.20, 0.10});
  std::vector<double> want;
  for (int k = 0; k <= 10; ++k) want.push_back(k / 10.0);
  return {sums.size() == 11 && on_grid(sums) == on_grid(want), std::to_string(sums.size()) + " sums"};
}

Outcome spin_born() {
  Rng rng(1);
  double worst = 0.0;
  bool structural = true;
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform(0.0, std::numbers::pi / 2);
    const Complex a = std::polar(std::cos(theta), rng.uniform(0.0, 2 * std::numbers::pi));
    const Complex b = std::polar(std::sin(theta), rng.uniform(0.0, 2 * std::numbers::pi));
    const Complex phase = std::polar(1.0, rng.uniform(0.0, 2 * std::numbers::pi));
    const auto x = spin_demo(a, b);
    const auto y = spin_demo(phase * a, phase * b);
    structural = structural && x.partition_ok && x.stability_ok && x.sectors_valid;
    worst = std::max({worst, std::abs(x.up - std::norm(a)), std::abs(x.down - std::norm(b)),
                      std::abs(x.up + x.down - 1.0), std::abs(x.up - y.up), std::abs(x.down - y.down)});
  }
  return {structural && worst <= 1e-10, "max deviation " + num(worst)};
}

Outcome partition_identity() {
  Rng rng(1);
  std::size_t refinements = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto m = generate_random_model(rng);
    const auto refined = m.refined_sectors();
    for (const auto& id : refined) {
      const auto& node = m.node(id);
      const auto left = m.bundle_of(m.nodes()[node.children[0]].id);
      const auto right = m.bundle_of(m.nodes()[node.children[1]].id);
      Bundle both;
      std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::inserter(both, both.end()));
      Bundle merged = left;
      merged.insert(right.begin(), right.end());
      if (!both.empty() || merged != m.bundle_of(id) || !check_partition(m, id).passed()) ++failures;
    }
    const auto st = check_refinement_stability(m, Valuation::from_model(m), refined);
    worst = std::max(worst, st.max_residual);
    failures += st.passed() ? 0 : 1;
    refinements += refined.size();
  }
  return {failures == 0 && worst <= 1e-12,
          std::to_string(refinements) + " refinements, max stability residual " + num(worst)};
}

Outcome norm_classification() {
  Rng rng(1);
  std::size_t violations = 0;
  std::size_t equal = 0;
  for (int i = 0; i < 50; ++i) {
    const auto psi_a = random_state(rng, 4);
    auto psi_b = random_state(rng, 3);
    const auto sec_a = Sector::coordinate(4, {0, 1, 2});
    const auto sec_b = Sector::full(3);
    if (i % 2 == 0) psi_b *= project(psi_a, sec_a).norm() / psi_b.norm();
    const auto report = check_norm_classification(
        {{RichnessKind::Saturated, 0, sec_a, psi_a}, {RichnessKind::Saturated, 0, sec_b, psi_b}}, 0.1);
    violations += report.violations.size();
    equal += report.equivalent_pairs;
  }
  return {violations == 0 && equal == 25, std::to_string(equal) + " equal-norm pairs, " +
                                              std::to_string(violations) + " violations"};
}

Outcome quadratic_uniqueness() {
  const auto grid = uniform_grid(4.0, 1.0 / 64.0);
  bool ok = true;
  std::string detail;
  for (double c : {0.0, 0.5, 1.0, 3.0}) {
    const auto g = ProfileFunction::quadratic(c);
    const auto eq = check_functional_equation(g, compatible_pairs(g, grid));
    const auto cert = certify_quadratic(g, grid, 1e-12);
    ok = ok && eq.max_residual <= 1e-12 && cert.certified && std::abs(cert.c - c) <= 1e-12;
  }
  const std::vector<ProfileFunction> others{ProfileFunction::closed_form("r", [](double r) { return r; }),
                                            ProfileFunction::closed_form("r^3", [](double r) { return r * r * r; }),
                                            ProfileFunction::counterexample(0.25), ProfileFunction::counterexample(0.5)};
  double weakest = INFINITY;
  for (const auto& g : others) {
    const double r = check_functional_equation(g, compatible_pairs(g, grid)).max_residual;
    weakest = std::min(weakest, r);
  }
  return {ok && weakest >= 0.05, "smallest non-quadratic max residual " + num(weakest)};
}

Outcome counterexample_separation() {
  const auto g = ProfileFunction::counterexample(0.5);
  Rng rng(1);
  std::vector<double> s(10000);
  for (auto& x : s) x = 10.0 * (1.0 - rng.uniform());
  const auto split = check_equal_split_relation(g, s);
  const double violation = std::abs(g(1.0) - g(0.6) - g(0.8));
  return {split.max_residual <= 1e-12 && violation >= 0.2,
          "equal-split residual " + num(split.max_residual) + ", violation " + num(violation)};
}

Outcome density_criterion() {
  bool ok = true;
  for (std::size_t n : {4, 16, 64, 256, 1024}) {
    const auto cert = density_certificate({Decomposition::uniform(n, 1.0)}, default_targets(1.0));
    ok = ok && cert.levels.front().worst_gap < 1.0 / static_cast<double>(n);
  }
  Rng rng(1);
  std::size_t failures = 0;
  for (int list = 0; list < 200; ++list) {
    std::vector<double> w(1 + rng.index(20));
    for (auto& x : w) x = rng.uniform(0.0, 1.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const double wmax = *std::max_element(w.begin(), w.end());
    std::vector<double> targets(50);
    for (auto& x : targets) x = rng.uniform(0.0, total);
    const auto best = subset_sum_exhaustive(w, targets);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto g = subset_sum_greedy(w, targets[t]);
      if (!(g.gap < wmax && g.achieved <= best[t].achieved + 1e-12 && best[t].gap <= g.gap + 1e-12)) ++failures;
    }
  }
  return {ok && failures == 0, "uniform levels " + std::string(ok ? "ok" : "FAILED") + ", " +
                                   std::to_string(failures) + " random-list failures"};
}

Outcome dense_extension() {
  const auto demo = dense_saturation_demo(128);
  const double c = demo.quadratic.certificate ? demo.quadratic.certificate->c : NAN;
  const bool ok = demo.quadratic.passed() && std::abs(c - 1.0) <= 1e-9 && !demo.control.passed() &&
                  demo.control_failures > 0 && demo.control_fails_only_inside_window;
  return {ok, "c = " + num(c) + ", control failures " + std::to_string(demo.control_failures)};
}

Outcome cauchy_scaffold() {
  std::map<Rational, double> linear;
  std::map<Rational, double> broken;
  for (const auto& q : rational_grid(64, 2)) {
    linear[q] = 0.75 * q.value();
    broken[q] = 0.75 * q.value() + (q == Rational::make(1, 3) ? 1e-6 : 0.0);
  }
  const auto rep = cauchy_linear_check(linear, {});
  bool detected = false;
  try {
    (void)cauchy_linear_check(broken, {});
  } catch (const Error& e) {
    detected = e.code() == ErrorCode::AdditivityViolation;
  }
  return {rep.c == 0.75 && rep.max_deviation <= 1e-10 && detected,
          "deviation " + num(rep.max_deviation) + ", violation " + (detected ? "detected" : "missed")};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("rwl_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string text[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const auto path = (dir / ("run" + std::to_string(i) + ".json")).string();
    std::ostringstream out;
    std::ostringstream err;
    codes[i] = cli::run_command({"verify", "--seed", "1", "--deterministic", "--json", path}, out, err);
    std::ifstream in(path, std::ios::binary);
    text[i].assign(std::istreambuf_iterator<char>(in), {});
  }
  std::filesystem::remove_all(dir);
  const bool ok = codes[0] == 0 && codes[1] == 0 && !text[0].empty() && text[0] == text[1];
  return {ok, std::to_string(text[0].size()) + " bytes, exit codes " + std::to_string(codes[0]) + "/" +
                  std::to_string(codes[1])};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked subset-sum table", 100, worked_subset_sums},
      {2, "spin example Born weights", 1000, spin_born},
      {3, "partition identity and refinement stability", 5000, partition_identity},
      {4, "norm classification", 5000, norm_classification},
      {5, "quadratic uniqueness", 5000, quadratic_uniqueness},
      {6, "counterexample separation", 1000, counterexample_separation},
      {7, "density criterion", 10000, density_criterion},
      {8, "dense extension", 5000, dense_extension},
      {9, "Cauchy scaffold", 1000, cauchy_scaffold},
      {10, "determinism of verify --seed 1", 30000, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms < c.budget_ms;
    const bool pass = outcome.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %2d  %-44s %9.1f ms (< %.0f)  %s%s\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(), ms,
                c.budget_ms, outcome.detail.c_str(), in_time ? "" : "  [over time budget]");
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
