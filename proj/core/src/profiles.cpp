#include "rwl/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rwl/error.hpp"
#include "rwl/funceq.hpp"

namespace rwl {

std::int64_t quantize(double x, double quantum) { return static_cast<std::int64_t>(std::llround(x / quantum)); }

ProfilePoint ProfilePoint::from_norms(double r1, double r2) { return {quantize(r1), quantize(r2)}; }

bool ProfileSpace::contains_self_profile() const {
  return points.contains(ProfilePoint::from_norms(total_norm, 0.0));
}

double ProfileSpace::max_pythagoras_residual() const {
  double worst = 0.0;
  const double s2 = total_norm * total_norm;
  for (const auto& p : points) worst = std::max(worst, std::abs(p.r1() * p.r1() + p.r2() * p.r2() - s2));
  return worst;
}

ProfileSpace profile_space(const RefinementClass& cls, double grid_step) {
  ProfileSpace space;
  space.total_norm = cls.component_norm();
  for (const auto& ref : enumerate_refinements(cls, grid_step)) {
    const double r1 = project(cls.state, ref.left()).norm();
    const double r2 = project(cls.state, ref.right()).norm();
    space.points.insert(ProfilePoint::from_norms(r1, r2));
  }
  space.points.insert(ProfilePoint::from_norms(space.total_norm, 0.0));
  return space;
}

bool profiles_equal(const ProfileSpace& a, const ProfileSpace& b) { return a.points == b.points; }

ClassificationReport check_norm_classification(const std::vector<RefinementClass>& classes, double grid_step) {
  for (const auto& c : classes) {
    if (c.kind != RichnessKind::Saturated) {
      throw Error(ErrorCode::PreconditionNotMet, "norm classification requires saturated classes");
    }
  }
  std::vector<ProfileSpace> spaces;
  spaces.reserve(classes.size());
  for (const auto& c : classes) spaces.push_back(profile_space(c, grid_step));

  ClassificationReport report;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < spaces.size(); ++j) {
      ++report.pairs_checked;
      const bool equal_profiles = profiles_equal(spaces[i], spaces[j]);
      const bool equal_norms = std::abs(spaces[i].total_norm - spaces[j].total_norm) <= 1e-9;
      if (equal_profiles) ++report.equivalent_pairs;
      if (equal_profiles != equal_norms) {
        report.violations.push_back({i, j, spaces[i].total_norm, spaces[j].total_norm, equal_profiles});
      }
    }
  }
  return report;
}

std::string_view to_string(ProfileFunction::Provenance p) noexcept {
  switch (p) {
    case ProfileFunction::Provenance::Extracted: return "extracted";
    case ProfileFunction::Provenance::Quadratic: return "closed-form-quadratic";
    case ProfileFunction::Provenance::Counterexample: return "closed-form-counterexample";
    case ProfileFunction::Provenance::ClosedForm: return "closed-form";
  }
  return "unknown";
}

ProfileFunction ProfileFunction::quadratic(double c) {
  if (!(c >= 0.0)) throw Error(ErrorCode::NegativeValue, "quadratic coefficient must be >= 0");
  ProfileFunction g;
  g.closed_ = [c](double r) { return c * r * r; };
  g.provenance_ = Provenance::Quadratic;
  std::ostringstream label;
  label << c << "*r^2";
  g.label_ = label.str();
  g.parameter_ = c;
  return g;
}

ProfileFunction ProfileFunction::counterexample(double epsilon) {
  (void)counterexample_g(epsilon, 1.0);  // range check
  ProfileFunction g;
  g.closed_ = [epsilon](double s) { return counterexample_g(epsilon, s); };
  g.provenance_ = Provenance::Counterexample;
  std::ostringstream label;
  label << "g_eps(" << epsilon << ")";
  g.label_ = label.str();
  g.parameter_ = epsilon;
  return g;
}

ProfileFunction ProfileFunction::closed_form(std::string label, std::function<double(double)> fn) {
  ProfileFunction g;
  g.closed_ = std::move(fn);
  g.label_ = std::move(label);
  return g;
}

ProfileFunction ProfileFunction::sampled(std::map<std::int64_t, double> samples, Provenance provenance) {
  for (const auto& [key, value] : samples) {
    if (!(value >= 0.0)) throw Error(ErrorCode::NegativeValue, "profile function values must be >= 0");
  }
  ProfileFunction g;
  g.samples_ = std::move(samples);
  g.provenance_ = provenance;
  g.label_ = "sampled";
  return g;
}

bool ProfileFunction::defined_at(double r) const {
  return closed_ ? r >= 0.0 : samples_.contains(quantize(r));
}

std::optional<double> ProfileFunction::try_eval(double r) const {
  if (closed_) return closed_(r);
  const auto it = samples_.find(quantize(r));
  if (it == samples_.end()) return std::nullopt;
  return it->second;
}

double ProfileFunction::operator()(double r) const {
  if (auto v = try_eval(r)) return *v;
  std::ostringstream msg;
  msg << "no sample at r = " << std::setprecision(17) << r;
  throw Error(ErrorCode::MissingSample, msg.str());
}

ProfileFunction ProfileFunction::sampled_on(const std::vector<double>& grid) const {
  std::map<std::int64_t, double> samples;
  for (double r : grid) samples[quantize(r)] = (*this)(r);
  auto g = sampled(std::move(samples), provenance_);
  g.label_ = label_;
  g.parameter_ = parameter_;
  return g;
}

ProfileFunction ProfileFunction::scaled(double lambda) const {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::NegativeValue, "scale must be >= 0");
  ProfileFunction g = *this;
  if (closed_) {
    g.closed_ = [inner = closed_, lambda](double r) { return lambda * inner(r); };
  } else {
    for (auto& [key, value] : g.samples_) value *= lambda;
  }
  if (provenance_ == Provenance::Quadratic && parameter_) g.parameter_ = *parameter_ * lambda;
  std::ostringstream label;
  label << lambda << "*(" << label_ << ")";
  g.label_ = label.str();
  return g;
}

ProfileFunction extract_profile_function(const std::vector<std::pair<double, double>>& assignments) {
  if (assignments.empty()) throw Error(ErrorCode::PreconditionNotMet, "no weight observations");
  std::map<std::int64_t, double> samples;
  for (const auto& [norm, weight] : assignments) {
    if (!(norm >= 0.0)) throw Error(ErrorCode::NegativeValue, "norms must be >= 0");
    if (!(weight >= 0.0)) throw Error(ErrorCode::NegativeValue, "weights must be >= 0");
    const auto key = quantize(norm);
    const auto [it, inserted] = samples.emplace(key, weight);
    if (!inserted && std::abs(it->second - weight) > 1e-9 * std::max({1.0, it->second, weight})) {
      std::ostringstream msg;
      msg << "norm " << norm << " carries weights " << it->second << " and " << weight;
      throw Error(ErrorCode::InternalEquivalenceViolation, msg.str());
    }
  }
  return ProfileFunction::sampled(std::move(samples), ProfileFunction::Provenance::Extracted);
}

void write_profile_csv(const ProfileFunction& g, std::ostream& out) {
  if (g.is_closed_form()) throw Error(ErrorCode::PreconditionNotMet, "sample a closed-form function before export");
  out << "r,g_r\n" << std::setprecision(17);
  for (const auto& [key, value] : g.samples()) out << static_cast<double>(key) * kProfileQuantum << ',' << value << '\n';
}

}  // namespace rwl
