#include "rwl/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rwl/continuation.hpp"
#include "rwl/error.hpp"
#include "rwl/random.hpp"
#include "rwl/record_model.hpp"

namespace rwl {

SpinReport spin_demo(Complex alpha, Complex beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 = " + std::to_string(norm2));
  }
  RecordLayer layer(StateVector{alpha, beta});
  layer.add_sector("up", Sector::coordinate(2, {0}), "spin");
  layer.add_sector("down", Sector::coordinate(2, {1}), "spin");

  const double w_up = project(layer.state(), layer.sector("up").sector).norm_squared();
  const double w_down = project(layer.state(), layer.sector("down").sector).norm_squared();

  ContinuationModel model("R");
  model.refine("R", "up", "down");
  model.attach({"c_up", "up", w_up});
  model.attach({"c_down", "down", w_down});
  const auto mu = Valuation::from_model(model);

  SpinReport report;
  report.sectors_valid = validate_sector(layer, "up").passed() && validate_sector(layer, "down").passed();
  report.partition_ok = check_partition(model, "R").passed();
  report.stability_ok = check_refinement_stability(model, mu, {"R"}).passed();
  report.up = induced_weight(model, mu, "up");
  report.down = induced_weight(model, mu, "down");
  report.total = induced_weight(model, mu, "R");
  return report;
}

BornTable normalized_weights(const StateVector& state, const std::vector<Sector>& sectors) {
  const double norm2 = state.norm_squared();
  if (std::abs(norm2 - 1.0) > 1e-9) throw Error(ErrorCode::NotNormalized, "|psi|^2 = " + std::to_string(norm2));
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    for (std::size_t j = i + 1; j < sectors.size(); ++j) {
      if (max_overlap(sectors[i], sectors[j]) > tol::kOrthonormal) {
        throw Error(ErrorCode::InvalidSector, "sectors " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " are not orthogonal");
      }
    }
  }
  BornTable table;
  for (const auto& s : sectors) table.weights.push_back(project(state, s).norm_squared());
  table.sum = std::accumulate(table.weights.begin(), table.weights.end(), 0.0);
  if (std::abs(table.sum - norm2) > 1e-9) {
    throw Error(ErrorCode::IncompleteDecomposition,
                "sectors capture " + std::to_string(table.sum) + " of |psi|^2 = " + std::to_string(norm2));
  }
  return table;
}

namespace {

std::vector<double> generate_shares(const CoarseRecordOptions& options) {
  if (options.forced_weights) {
    if (options.forced_weights->size() != options.subrecords) {
      throw Error(ErrorCode::OutOfRange, "forced weights must have one entry per sub-record");
    }
    return *options.forced_weights;
  }
  std::vector<double> shares(options.subrecords, 1.0);
  if (options.profile == SubrecordProfile::Random) {
    Rng rng(options.seed);
    for (auto& w : shares) w = rng.uniform(0.1, 1.0);
  }
  const double total = std::accumulate(shares.begin(), shares.end(), 0.0);
  for (auto& w : shares) w /= total;
  return shares;
}

}  // namespace

CoarseRecordReport coarse_record_demo(const CoarseRecordOptions& options) {
  const std::size_t n = options.subrecords;
  if (n < 4 || n > 1024) throw Error(ErrorCode::OutOfRange, "sub-record count must lie in [4, 1024]");

  // State with amplitudes sqrt(w_i) and seeded phases; sub-records are the coordinate axes.
  const auto shares = generate_shares(options);
  Rng phases(options.seed ^ 0xC0A45EULL);
  std::vector<Complex> amps(n);
  for (std::size_t i = 0; i < n; ++i) {
    amps[i] = std::polar(std::sqrt(shares[i]), 2.0 * std::numbers::pi * phases.uniform());
  }
  const StateVector psi(std::move(amps));

  CoarseRecordReport report;
  report.subrecords = n;
  report.seed = options.seed;
  for (std::size_t i = 0; i < n; ++i) {
    report.weights.push_back(project(psi, Sector::coordinate(n, {i})).norm_squared());
  }
  const double total = project(psi, Sector::full(n)).norm_squared();
  if (n <= kMaxExhaustiveWeights) report.realized_sums = realized_sums(report.weights);

  // Finer levels are weight structure only: each share split into equal pieces.
  const Decomposition coarse(report.weights, total);
  const std::vector<Decomposition> levels{coarse, coarse.split_uniformly(4), coarse.split_uniformly(16)};
  const auto targets = default_targets(total);
  report.certificate = density_certificate(levels, targets);

  // Induced weights of greedy groupings R_A and their complements, from the
  // atomic valuation on one continuation per finest-level piece.
  const auto& finest = levels.back().weights();
  std::map<std::string, double> atoms;
  for (std::size_t i = 0; i < finest.size(); ++i) atoms.emplace("c" + std::to_string(i), finest[i]);
  const Valuation mu(std::move(atoms));
  Bundle everything;
  for (const auto& [id, w] : mu.atoms()) everything.insert(id);
  const double w_total = mu.measure(everything);

  const double s = std::sqrt(total);
  std::vector<std::pair<double, double>> observations{{s, w_total}, {0.0, 0.0}};
  RelationSet relations;
  std::vector<ExtensionProbe> probes;
  for (double x : targets) {
    const auto pick = subset_sum_greedy(finest, x);
    Bundle group;
    for (auto i : pick.indices) group.insert("c" + std::to_string(i));
    Bundle rest;
    std::set_difference(everything.begin(), everything.end(), group.begin(), group.end(),
                        std::inserter(rest, rest.end()));
    // Norms via Pythagoras over the grouped pieces; weights from mu.
    double complement = 0.0;
    for (std::size_t i = 0, k = 0; i < finest.size(); ++i) {
      if (k < pick.indices.size() && pick.indices[k] == i) {
        ++k;
      } else {
        complement += finest[i];
      }
    }
    const double t = std::sqrt(pick.achieved);
    const double u = std::sqrt(complement);
    observations.emplace_back(t, mu.measure(group));
    observations.emplace_back(u, mu.measure(rest));
    relations.add({s, t, u});
    if (pick.achieved > 0.0 && complement > 0.0) probes.push_back({t * t, u * u});
  }
  const auto g = extract_profile_function(observations);

  // sqrt is 1/2-Hoelder: realized shares within 0.01 W + max piece of each
  // other give norms within the square root of that.
  const double modulus = std::sqrt(0.01 * total + levels.back().max_weight()) + 1e-12;
  // Sampled norms sit on a 1e-9 grid, so the equation holds only to that order.
  report.extension = dense_extension_check(g, relations, modulus, 1.0, probes, 1e-8);
  if (report.extension.certificate) report.recovered_c = report.extension.certificate->c;
  report.c_ok = report.extension.certificate && std::abs(report.recovered_c - 1.0) <= 1e-6;
  return report;
}

ProfileFunction jump_control_profile(const JumpControl& control) {
  return ProfileFunction::closed_form("r^2 + jump near r = " + std::to_string(control.center), [control](double r) {
    return r * r + (std::abs(r - control.center) < control.half_width ? control.jump : 0.0);
  });
}

DenseSaturationDemo dense_saturation_demo(int denominator_bound) {
  if (denominator_bound < 2) throw Error(ErrorCode::OutOfRange, "denominator bound must be >= 2");
  DenseSaturationDemo demo;
  demo.denominator_bound = denominator_bound;

  std::vector<double> s_values;
  for (int k = 1; k <= 8; ++k) s_values.push_back(0.25 * k);
  // Farey neighbours of 0 and 1 sit 1/q apart, so t-gaps are at most s_max / q;
  // the window removed for the control adds 2 * half_width.
  demo.continuity_modulus = 4.0 / denominator_bound + 0.01;

  const JumpControl control;
  const double c2 = control.center * control.center;
  std::vector<ExtensionProbe> probes;
  for (double s : {1.0, 1.5, 2.0}) {
    const double total = s * s;
    const double below = (control.center - 2 * control.half_width) * (control.center - 2 * control.half_width);
    const double above = (control.center + 2 * control.half_width) * (control.center + 2 * control.half_width);
    for (double u : {below, c2, above, 0.1 * total, 0.37 * total, 0.5 * total}) probes.push_back({u, total - u});
  }

  demo.quadratic = dense_extension_check(ProfileFunction::quadratic(1.0),
                                         RelationSet::rational(s_values, denominator_bound),
                                         demo.continuity_modulus, 1.0, probes);

  const auto in_window = [control](double r) { return std::abs(r - control.center) < control.half_width; };
  demo.control = dense_extension_check(jump_control_profile(control),
                                       RelationSet::rational(s_values, denominator_bound, in_window),
                                       demo.continuity_modulus, 1.0, probes);
  demo.control_fails_only_inside_window = true;
  for (const auto& p : demo.control.probes) {
    if (p.passed) continue;
    ++demo.control_failures;
    if (std::abs(p.u - c2) > 1e-15) demo.control_fails_only_inside_window = false;
  }

  try {
    (void)dense_extension_check(ProfileFunction::counterexample(0.5), RelationSet::equal_split(s_values),
                                demo.continuity_modulus, 1.0, {});
  } catch (const Error& e) {
    demo.equal_split_error = e.code();
  }
  return demo;
}

}  // namespace rwl
