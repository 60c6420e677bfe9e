#include "rwl/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <system_error>

#include "rwl/error.hpp"

namespace rwl {

using nlohmann::json;

bool RunReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void RunReport::add(std::string id, std::string anchor, bool passed, double residual, std::string detail) {
  checks.push_back({std::move(id), std::move(anchor), passed, residual, std::move(detail)});
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const RunReport& r) { return r.passed(); });
}

int VerifyReport::exit_code() const noexcept {
  for (const auto& s : suites) {
    if (!s.passed()) return s.exit_code;
  }
  return 0;
}

const std::vector<std::string_view>& known_anchors() {
  static const std::vector<std::string_view> anchors{
      "plumbing",
      "robust-record-sector",
      "projected-components-pythagoras",
      "binary-saturation",
      "equal-split-refinement-class",
      "continuation-partition",
      "induced-record-weight",
      "refinement-stability",
      "norm-determines-profile",
      "norm-reduced-weight",
      "internal-equivalence",
      "quadratic-functional-equation",
      "equal-split-counterexample",
      "cauchy-linearity",
      "quadratic-uniqueness",
      "dense-saturation-continuity",
      "local-density-criterion",
      "worked-subset-sums",
      "spin-example",
      "born-normalization",
      "coarse-record-schematic",
  };
  return anchors;
}

namespace {

// JSON has no infinities or NaN; nlohmann would emit null silently.
json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? json("nan") : json(x > 0 ? "inf" : "-inf");
}

}  // namespace

json to_json(const RunReport& report, bool deterministic) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"passed", c.passed},
                      {"residual", number(c.residual)},
                      {"detail", c.detail}});
  }
  json out{{"name", report.suite}, {"passed", report.passed()}, {"exit_code", report.exit_code}, {"checks", checks}};
  if (!deterministic) out["wall_ms"] = report.wall_ms;
  return out;
}

json to_json(const VerifyReport& report, bool deterministic) {
  json suites = json::array();
  for (const auto& s : report.suites) suites.push_back(to_json(s, deterministic));
  json out{{"seed", report.seed}, {"passed", report.passed()}, {"exit_code", report.exit_code()}, {"suites", suites}};
  if (!deterministic) out["wall_ms"] = report.wall_ms;
  return out;
}

json to_json(const DensityCertificate& certificate) {
  json levels = json::array();
  for (const auto& l : certificate.levels) {
    levels.push_back({{"pieces", l.pieces},
                      {"eps_share", number(l.eps_share)},
                      {"bound", number(l.bound)},
                      {"worst_gap", number(l.worst_gap)},
                      {"worst_target", number(l.worst_target)},
                      {"worst_norm_gap", number(l.worst_norm_gap)},
                      {"valid", l.valid}});
  }
  return {{"total", number(certificate.total)},
          {"targets", certificate.targets},
          {"valid", certificate.valid},
          {"converging", certificate.converging},
          {"gaps_monotone", certificate.gaps_monotone},
          {"levels", levels}};
}

json to_json(const DenseExtensionReport& report) {
  json probes = json::array();
  for (const auto& p : report.probes) {
    probes.push_back({{"u", number(p.u)},
                      {"v", number(p.v)},
                      {"residual", number(p.residual)},
                      {"nearest", number(p.nearest)},
                      {"bound", number(p.bound)},
                      {"passed", p.passed}});
  }
  json out{{"relations_checked", report.relations_checked},
           {"families", report.families},
           {"max_t_gap", number(report.max_t_gap)},
           {"max_relation_residual", number(report.max_relation_residual)},
           {"extension_ok", report.extension_ok},
           {"certification_applicable", report.certification_applicable},
           {"passed", report.passed()},
           {"probes", probes}};
  if (report.certificate) {
    const auto& c = *report.certificate;
    out["certificate"] = {{"c", number(c.c)},
                          {"max_relative_error", number(c.max_relative_error)},
                          {"threshold", number(c.threshold)},
                          {"equation_residual", number(c.equation_residual)},
                          {"pairs_checked", c.pairs_checked},
                          {"certified", c.certified}};
  }
  return out;
}

json to_json(const EquationReport& report) {
  return {{"pairs_checked", report.pairs_checked},
          {"max_residual", number(report.max_residual)},
          {"max_scaled_residual", number(report.max_scaled_residual)},
          {"worst_pair", {number(report.worst_pair.first), number(report.worst_pair.second)}}};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoFailure, "cannot move output into " + path.string());
  }
}

namespace {

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v, bool log) {
  std::ostringstream s;
  if (log) {
    s << "1e" << static_cast<int>(std::lround(v));
  } else {
    s << std::setprecision(3) << v;
  }
  return s.str();
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  const auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
  const auto ty = [&](double y) { return options.log_y ? std::log10(y) : y; };
  const auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!options.log_x || x > 0) && (!options.log_y || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
      if (!usable(s.xs[i], s.ys[i])) continue;
      x0 = std::min(x0, tx(s.xs[i]));
      x1 = std::max(x1, tx(s.xs[i]));
      y0 = std::min(y0, ty(s.ys[i]));
      y1 = std::max(y1, ty(s.ys[i]));
    }
  }
  if (!std::isfinite(x0)) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-12) y1 = y0 + 1.0;
  if (options.log_y) {
    y0 = std::floor(y0);
    y1 = std::ceil(y1);
  }

  const double left = 70;
  const double right = 20;
  const double top = 40;
  const double bottom = 50;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << options.width / 2.0 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape_xml(options.title) << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x0 + (x1 - x0) * i / kTicks;
    const double fy = y0 + (y1 - y0) * i / kTicks;
    svg << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
        << tick_label(fx, options.log_x) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
        << tick_label(fy, options.log_y) << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << options.height - 10 << "\" text-anchor=\"middle\">"
      << escape_xml(options.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + ph / 2 << ")\">" << escape_xml(options.y_label) << "</text>\n";

  double legend_y = top + 14;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
      if (usable(s.xs[i], s.ys[i])) svg << px(tx(s.xs[i])) << ',' << py(ty(s.ys[i])) << ' ';
    }
    svg << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
        if (!usable(s.xs[i], s.ys[i])) continue;
        svg << "<circle cx=\"" << px(tx(s.xs[i])) << "\" cy=\"" << py(ty(s.ys[i])) << "\" r=\"3\" fill=\"" << s.color
            << "\"/>\n";
      }
    }
    svg << "<text x=\"" << left + 10 << "\" y=\"" << legend_y << "\" fill=\"" << s.color << "\">"
        << escape_xml(s.label) << "</text>\n";
    legend_y += 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_profile_overlay(const ProfileFunction& g, double c, const std::vector<double>& grid) {
  PlotSeries measured{g.label(), {}, {}, "#d62728"};
  std::ostringstream qlabel;
  qlabel << c << " r^2";
  PlotSeries quadratic{qlabel.str(), {}, {}, "#1f77b4"};
  for (double r : grid) {
    measured.xs.push_back(r);
    measured.ys.push_back(g(r));
    quadratic.xs.push_back(r);
    quadratic.ys.push_back(c * r * r);
  }
  return render_svg({quadratic, measured}, {"profile function vs quadratic", "r", "g(r)"});
}

std::string render_gap_curve(const DensityCertificate& certificate) {
  PlotSeries gap{"worst greedy gap", {}, {}, "#d62728", true};
  PlotSeries bound{"max w (gap bound)", {}, {}, "#1f77b4", true};
  for (const auto& l : certificate.levels) {
    gap.xs.push_back(l.eps_share);
    gap.ys.push_back(std::max(l.worst_gap, 1e-16));
    bound.xs.push_back(l.eps_share);
    bound.ys.push_back(l.bound);
  }
  PlotOptions options{"subset-sum gap per decomposition level", "eps_n", "gap", true, true};
  return render_svg({bound, gap}, options);
}

}  // namespace rwl
