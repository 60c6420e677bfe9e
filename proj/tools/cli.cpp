#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rwl/error.hpp"
#include "rwl/funceq.hpp"
#include "rwl/random.hpp"
#include "rwl/report.hpp"
#include "rwl/saturation.hpp"
#include "rwl/scenario_io.hpp"
#include "rwl/scenarios.hpp"
#include "rwl/verify.hpp"

namespace rwl::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

// --seed wins, then RWL_SEED, then the default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("RWL_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t value = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Usage("RWL_SEED is not an unsigned integer: '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Usage(std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

// "RE,IM" or "RE".
Complex parse_complex(const std::string& text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, what), 0.0};
  return {parse_double(std::string_view(text).substr(0, comma), what),
          parse_double(std::string_view(text).substr(comma + 1), what)};
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  try {
    return parse_weight_list(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::optional<std::uint64_t> seed;
  std::string json;
  bool deterministic = false;
  bool sequential = false;
  bool verbose = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(a.seed);
  const auto report = run_verify(seed, !a.sequential);
  const bool to_stdout = a.json == "-";
  std::ostream& text = to_stdout ? err : out;
  text << "seed " << seed << '\n';
  for (const auto& suite : report.suites) {
    std::size_t failed = 0;
    for (const auto& c : suite.checks) failed += c.passed ? 0 : 1;
    text << std::left << std::setw(12) << suite.suite << (suite.passed() ? "PASS  " : "FAIL  ") << suite.checks.size()
         << " checks";
    if (failed > 0) text << ", " << failed << " failed";
    if (!a.deterministic) text << "  (" << num(suite.wall_ms, 4) << " ms)";
    text << '\n';
    for (const auto& c : suite.checks) {
      if (c.passed && !a.verbose) continue;
      text << "  " << (c.passed ? "ok    " : "FAIL  ") << c.id << "  [" << c.anchor << "]  residual " << num(c.residual, 6);
      if (!c.detail.empty()) text << "  " << c.detail;
      text << '\n';
    }
  }
  if (!a.json.empty()) emit(a.json, to_json(report, a.deterministic).dump(2) + "\n", out);
  return report.exit_code();
}

// ---------------------------------------------------------------- spin

int cmd_spin(const std::string& alpha_text, const std::string& beta_text, std::ostream& out) {
  const Complex alpha = parse_complex(alpha_text, "--alpha");
  const Complex beta = parse_complex(beta_text, "--beta");
  const auto r = spin_demo(alpha, beta);
  out << "W(up)    " << num(r.up) << '\n'
      << "W(down)  " << num(r.down) << '\n'
      << "total    " << num(r.total) << '\n'
      << "sectors valid        " << (r.sectors_valid ? "yes" : "no") << '\n'
      << "partition exact      " << (r.partition_ok ? "yes" : "no") << '\n'
      << "refinement stable    " << (r.stability_ok ? "yes" : "no") << '\n';
  const bool ok = r.sectors_valid && r.partition_ok && r.stability_ok && std::abs(r.total - 1.0) <= 1e-10;
  return ok ? 0 : kExitScenario;
}

// ---------------------------------------------------------------- density

struct DensityArgs {
  std::string weights;
  std::string targets;
  std::string json;
  std::string svg;
  int levels = 1;
};

constexpr std::size_t kMaxListedWeights = 24;

int cmd_density(const DensityArgs& a, std::ostream& out) {
  const auto weights = read_numbers(a.weights);
  if (weights.empty()) throw Error(ErrorCode::ParseError, a.weights + ": no weights");
  const Decomposition base(weights);
  const auto targets = a.targets.empty() ? default_targets(base.total()) : read_numbers(a.targets);

  out << "weights " << weights.size() << "  total " << num(base.total()) << "  max " << num(base.max_weight()) << '\n';
  if (weights.size() <= kMaxListedWeights) {
    const auto sums = realized_sums(weights);
    out << "realized sums (" << sums.size() << "):\n";
    for (double s : sums) out << "  " << num(s) << '\n';
  } else {
    out << "realized sums: skipped for more than " << kMaxListedWeights << " weights\n";
  }

  if (!a.targets.empty()) {
    out << "greedy subset sums:\n";
    for (double x : targets) {
      const auto pick = subset_sum_greedy(weights, x);
      out << "  target " << num(x) << "  achieved " << num(pick.achieved) << "  gap " << num(pick.gap) << '\n';
    }
  }

  std::vector<Decomposition> levels{base};
  for (int i = 1; i < a.levels; ++i) levels.push_back(levels.back().split_uniformly(2));
  const auto cert = density_certificate(levels, targets);
  for (const auto& l : cert.levels) {
    out << "level pieces " << l.pieces << "  eps " << num(l.eps_share, 6) << "  worst gap " << num(l.worst_gap, 6)
        << " at " << num(l.worst_target, 6) << "  bound " << num(l.bound, 6) << (l.valid ? "  ok" : "  VIOLATED")
        << '\n';
  }
  if (!a.json.empty()) emit(a.json, to_json(cert).dump(2) + "\n", out);
  if (!a.svg.empty()) emit(a.svg, render_gap_curve(cert), out);
  return cert.valid ? 0 : kExitSaturation;
}

// ---------------------------------------------------------------- counterexample

struct CounterexampleArgs {
  double epsilon = 0.5;
  std::optional<std::uint64_t> seed;
  int samples = 10000;
  std::string plot;
  std::string csv;
};

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out) {
  const auto g = ProfileFunction::counterexample(a.epsilon);
  Rng rng(resolve_seed(a.seed));
  std::vector<double> s(static_cast<std::size_t>(a.samples));
  for (auto& x : s) x = 10.0 * (1.0 - rng.uniform());
  const auto split = check_equal_split_relation(g, s);
  const double violation = g(1.0) - g(0.6) - g(0.8);

  out << "g_eps(s) = s^2 (1 + eps sin(4 pi log2 s)), eps = " << num(a.epsilon) << '\n'
      << "equal-split max residual  " << num(split.max_residual, 6) << " over " << split.samples
      << " samples in (0, 10], worst s = " << num(split.worst_s, 6) << '\n'
      << "full equation at (0.6, 0.8): g(1) - g(0.6) - g(0.8) = " << num(violation, 6) << '\n';

  if (!a.csv.empty() || !a.plot.empty()) {
    const auto grid = uniform_grid(2.0, 1.0 / 128.0);
    if (!a.csv.empty()) {
      std::ostringstream csv;
      write_profile_csv(g.sampled_on(grid), csv);
      emit(a.csv, csv.str(), out);
    }
    if (!a.plot.empty()) emit(a.plot, render_profile_overlay(g, 1.0, grid), out);
  }
  const bool separated = split.max_residual <= 1e-12 && std::abs(violation) > 1e-9;
  out << (separated ? "separation shown\n" : "separation NOT shown\n");
  return separated ? 0 : kExitFunceq;
}

// ---------------------------------------------------------------- dense-check

int cmd_dense_check(int q, std::ostream& out) {
  const auto demo = dense_saturation_demo(q);
  const auto& quad = demo.quadratic;
  out << "denominators <= " << q << ", continuity modulus " << num(demo.continuity_modulus, 6) << '\n'
      << "g = r^2: " << quad.relations_checked << " relations in " << quad.families << " families, max t gap "
      << num(quad.max_t_gap, 6) << ", max relation residual " << num(quad.max_relation_residual, 6) << '\n';
  std::size_t probe_failures = 0;
  for (const auto& p : quad.probes) probe_failures += p.passed ? 0 : 1;
  out << "  probes " << quad.probes.size() << ", failed " << probe_failures << '\n';
  if (quad.certificate) {
    out << "  certified " << (quad.certificate->certified ? "yes" : "no") << ", c = " << num(quad.certificate->c)
        << '\n';
  } else {
    out << "  certification not applicable\n";
  }
  out << "jump control: " << demo.control_failures << " of " << demo.control.probes.size() << " probes fail"
      << (demo.control_fails_only_inside_window ? ", all inside the jump window" : "") << '\n';
  out << "equal-split relations only: "
      << (demo.equal_split_error ? std::string(to_string(*demo.equal_split_error)) : std::string("accepted")) << '\n';
  out << (demo.passed() ? "dense extension check: PASS\n" : "dense extension check: FAIL\n");
  return demo.passed() ? 0 : kExitFunceq;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string dir;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.seed);
  const fs::path dir(a.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

  const auto report = run_verify(seed, true);
  write_file_atomic(dir / "verify.json", to_json(report, a.deterministic).dump(2) + "\n");

  std::ostringstream checks;
  checks << "suite,id,anchor,passed,residual\n" << std::setprecision(17);
  for (const auto& suite : report.suites) {
    for (const auto& c : suite.checks) {
      checks << suite.suite << ",\"" << c.id << "\"," << c.anchor << ',' << (c.passed ? 1 : 0) << ',' << c.residual
             << '\n';
    }
  }
  write_file_atomic(dir / "checks.csv", checks.str());

  const auto grid = uniform_grid(2.0, 1.0 / 128.0);
  const auto g = ProfileFunction::counterexample(0.5);
  std::ostringstream csv;
  write_profile_csv(g.sampled_on(grid), csv);
  write_file_atomic(dir / "g_eps_0.5.csv", csv.str());
  write_file_atomic(dir / "g_eps_0.5_overlay.svg", render_profile_overlay(g, 1.0, grid));

  const auto coarse = coarse_record_demo({16, seed, SubrecordProfile::Random, std::nullopt});
  std::ostringstream levels;
  levels << "pieces,eps_share,worst_gap,bound\n" << std::setprecision(17);
  for (const auto& l : coarse.certificate.levels) {
    levels << l.pieces << ',' << l.eps_share << ',' << l.worst_gap << ',' << l.bound << '\n';
  }
  write_file_atomic(dir / "density_levels.csv", levels.str());
  write_file_atomic(dir / "density.json", to_json(coarse.certificate).dump(2) + "\n");
  write_file_atomic(dir / "gap_curve.svg", render_gap_curve(coarse.certificate));

  out << "wrote verify.json, checks.csv, g_eps_0.5.csv, g_eps_0.5_overlay.svg, density_levels.csv, density.json, "
         "gap_curve.svg to "
      << dir.string() << '\n';
  return report.exit_code();
}

// ---------------------------------------------------------------- scenario

struct ScenarioArgs {
  std::string file;
  std::string builtin;
};

int cmd_scenario(const ScenarioArgs& a, std::ostream& out) {
  Scenario scenario = [&] {
    if (!a.file.empty()) return load_scenario(a.file);
    for (const auto& [name, text] : builtin_scenarios()) {
      if (name == a.builtin) return parse_scenario(text, name);
    }
    throw Usage("unknown builtin scenario '" + a.builtin + "'");
  }();
  const auto result = run_scenario(scenario);
  out << "scenario " << result.name << '\n';
  for (const auto& c : result.checks) {
    out << "  " << (c.passed ? "ok    " : "FAIL  ") << c.id << "  residual " << num(c.residual, 6);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  return result.passed() ? 0 : kExitScenario;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Record-weight checks: verification suites, demos and reports", "rwl"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run every verification suite");
  v->add_option("--seed", verify.seed, "Seed for randomized suites (default: $RWL_SEED, else 1)");
  v->add_option("--json", verify.json, "Write the JSON report to PATH ('-' for stdout)");
  v->add_flag("--deterministic", verify.deterministic, "Omit timing fields from the JSON report");
  v->add_flag("--sequential", verify.sequential, "Run suites one after another");
  v->add_flag("-v,--verbose", verify.verbose, "List passing checks too");

  std::string alpha;
  std::string beta;
  auto* s = app.add_subcommand("spin", "Two-sector spin example");
  s->add_option("--alpha", alpha, "Amplitude of |up> as RE,IM")->required();
  s->add_option("--beta", beta, "Amplitude of |down> as RE,IM")->required();

  DensityArgs density;
  auto* d = app.add_subcommand("density", "Realized subset sums and greedy gaps of a weight list");
  d->add_option("--weights", density.weights, "Weight file, one value per line")->required();
  d->add_option("--targets", density.targets, "Target file (default: 0.01 W grid)");
  d->add_option("--levels", density.levels, "Refine by halving every weight this many times minus one")
      ->check(CLI::Range(1, 16));
  d->add_option("--json", density.json, "Write the density certificate as JSON");
  d->add_option("--svg", density.svg, "Write the gap-vs-eps curve as SVG");

  CounterexampleArgs counter;
  auto* c = app.add_subcommand("counterexample", "Equal-split counterexample g_eps");
  c->add_option("--epsilon", counter.epsilon, "0 < eps < 1")->required();
  c->add_option("--seed", counter.seed, "Seed for the random s samples");
  c->add_option("--samples", counter.samples, "Number of random s samples")->check(CLI::Range(1, 10000000));
  c->add_option("--plot", counter.plot, "Write g_eps vs r^2 overlay as SVG");
  c->add_option("--csv", counter.csv, "Write g_eps samples as CSV (r,g_r)");

  int denominator = 128;
  auto* dc = app.add_subcommand("dense-check", "Dense-saturation extension check on rational relations");
  dc->add_option("--grid-denominator", denominator, "Largest relation denominator")
      ->required()
      ->check(CLI::Range(1, 4096));

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Write JSON, CSV and SVG artifacts");
  r->add_option("--out", rep.dir, "Output directory")->required();
  r->add_option("--seed", rep.seed, "Seed (default: $RWL_SEED, else 1)");
  r->add_flag("--deterministic", rep.deterministic, "Omit timing fields from verify.json");

  ScenarioArgs scen;
  auto* sc = app.add_subcommand("scenario", "Run a scenario file");
  auto* file_opt = sc->add_option("--file", scen.file, "Scenario JSON file");
  auto* builtin_opt = sc->add_option("--builtin", scen.builtin, "Shipped scenario: spin or worked4");
  file_opt->excludes(builtin_opt);
  sc->require_option(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  // Errors raised inside a command exit with that command's suite code.
  int suite = kExitFramework;
  if (s->parsed() || sc->parsed()) suite = kExitScenario;
  if (d->parsed()) suite = kExitSaturation;
  if (c->parsed() || dc->parsed()) suite = kExitFunceq;
  try {
    if (v->parsed()) return cmd_verify(verify, out, err);
    if (s->parsed()) return cmd_spin(alpha, beta, out);
    if (d->parsed()) return cmd_density(density, out);
    if (c->parsed()) return cmd_counterexample(counter, out);
    if (dc->parsed()) return cmd_dense_check(denominator, out);
    if (r->parsed()) return cmd_report(rep, out);
    if (sc->parsed()) return cmd_scenario(scen, out);
  } catch (const Usage& e) {
    err << "rwl: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "rwl: " << e.what() << '\n';
    return suite;
  }
  return kExitUsage;
}

}  // namespace rwl::cli
