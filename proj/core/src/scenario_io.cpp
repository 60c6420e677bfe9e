#include "rwl/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "rwl/error.hpp"
#include "rwl/saturation.hpp"

namespace rwl {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw Error(ErrorCode::ParseError, std::string(source_) + ": " + (pointer.empty() ? "/" : pointer) + ": " + message);
  }

  const json& member(const json& obj, const std::string& pointer, const char* key) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(pointer + "/" + key, "missing required field");
    return *it;
  }

  const json* optional_member(const json& obj, const char* key) const {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  std::string string(const json& v, const std::string& pointer) const {
    if (!v.is_string()) fail(pointer, "expected a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "expected a finite number");
    return x;
  }

  std::size_t index(const json& v, const std::string& pointer) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(pointer, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  const json& array(const json& v, const std::string& pointer) const {
    if (!v.is_array()) fail(pointer, "expected an array");
    return v;
  }

  /// A real number or a [re, im] pair.
  Complex amplitude(const json& v, const std::string& pointer) const {
    if (v.is_number()) return {number(v, pointer), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], pointer + "/0"), number(v[1], pointer + "/1")};
    fail(pointer, "expected a number or a [re, im] pair");
  }

  StateVector vector(const json& v, const std::string& pointer, std::size_t dim) const {
    array(v, pointer);
    if (v.size() != dim) fail(pointer, "expected " + std::to_string(dim) + " amplitudes, got " + std::to_string(v.size()));
    std::vector<Complex> amps;
    for (std::size_t i = 0; i < v.size(); ++i) amps.push_back(amplitude(v[i], pointer + "/" + std::to_string(i)));
    return StateVector(std::move(amps));
  }

 private:
  std::string_view source_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json amplitude_json(const Complex& a) { return json::array({a.real(), a.imag()}); }

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON";
    throw Error(ErrorCode::ParseError, msg.str());
  }

  const Reader rd(source);
  const std::string name = rd.string(rd.member(doc, "", "name"), "/name");
  const std::size_t dim = rd.index(rd.member(doc, "", "ambient_dim"), "/ambient_dim");
  if (dim == 0 || dim > kMaxAmbientDim) rd.fail("/ambient_dim", "must lie in [1, 4096]");

  RecordLayer layer(rd.vector(rd.member(doc, "", "state"), "/state", dim));

  const auto& sectors = rd.array(rd.member(doc, "", "sectors"), "/sectors");
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const std::string ptr = "/sectors/" + std::to_string(k);
    const auto& entry = sectors[k];
    const std::string sector_name = rd.string(rd.member(entry, ptr, "name"), ptr + "/name");
    std::string group = "default";
    if (const auto* g = rd.optional_member(entry, "group")) group = rd.string(*g, ptr + "/group");

    try {
      if (const auto* idx = rd.optional_member(entry, "basis_indices")) {
        std::vector<std::size_t> indices;
        rd.array(*idx, ptr + "/basis_indices");
        for (std::size_t i = 0; i < idx->size(); ++i) {
          const auto k_idx = rd.index((*idx)[i], ptr + "/basis_indices/" + std::to_string(i));
          if (k_idx >= dim) rd.fail(ptr + "/basis_indices/" + std::to_string(i), "index outside the ambient space");
          indices.push_back(k_idx);
        }
        if (indices.empty()) rd.fail(ptr + "/basis_indices", "a record sector needs at least one basis vector");
        layer.add_sector(sector_name, Sector::coordinate(dim, indices), group);
      } else if (const auto* vecs = rd.optional_member(entry, "vectors")) {
        rd.array(*vecs, ptr + "/vectors");
        std::vector<StateVector> basis;
        for (std::size_t i = 0; i < vecs->size(); ++i) {
          basis.push_back(rd.vector((*vecs)[i], ptr + "/vectors/" + std::to_string(i), dim));
        }
        if (basis.empty()) rd.fail(ptr + "/vectors", "a record sector needs at least one basis vector");
        layer.add_sector(sector_name, Sector::span(basis), group);
      } else {
        rd.fail(ptr, "needs either basis_indices or vectors");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      rd.fail(ptr, e.what());
    }
  }

  Scenario scenario{name, std::move(layer), std::nullopt, std::nullopt, {}};

  if (const auto* tree = rd.optional_member(doc, "tree")) {
    const std::string root = rd.string(rd.member(*tree, "/tree", "root"), "/tree/root");
    std::vector<ContinuationModel::Split> splits;
    if (const auto* list = rd.optional_member(*tree, "splits")) {
      rd.array(*list, "/tree/splits");
      for (std::size_t k = 0; k < list->size(); ++k) {
        const std::string ptr = "/tree/splits/" + std::to_string(k);
        splits.push_back({rd.string(rd.member((*list)[k], ptr, "parent"), ptr + "/parent"),
                          rd.string(rd.member((*list)[k], ptr, "left"), ptr + "/left"),
                          rd.string(rd.member((*list)[k], ptr, "right"), ptr + "/right")});
      }
    }
    std::vector<Continuation> atoms;
    if (const auto* list = rd.optional_member(doc, "continuation_atoms")) {
      rd.array(*list, "/continuation_atoms");
      for (std::size_t k = 0; k < list->size(); ++k) {
        const std::string ptr = "/continuation_atoms/" + std::to_string(k);
        const auto& a = (*list)[k];
        Continuation c{rd.string(rd.member(a, ptr, "id"), ptr + "/id"),
                       rd.string(rd.member(a, ptr, "sector"), ptr + "/sector"), 0.0};
        const auto& w = rd.member(a, ptr, "weight");
        if (w.is_string() && w.get<std::string>() == "born") {
          try {
            c.weight = project(scenario.layer.state(), scenario.layer.sector(c.realized_sector).sector).norm_squared();
          } catch (const Error& e) {
            rd.fail(ptr + "/weight", std::string("\"born\" needs a layer sector of the same name: ") + e.what());
          }
        } else {
          c.weight = rd.number(w, ptr + "/weight");
        }
        atoms.push_back(std::move(c));
      }
    }
    try {
      ContinuationModel model(root);
      for (const auto& s : splits) model.refine(s.parent, s.left, s.right);
      for (auto& c : atoms) model.attach(std::move(c));
      scenario.model = std::move(model);
    } catch (const Error& e) {
      rd.fail("/tree", e.what());
    }
  } else if (rd.optional_member(doc, "continuation_atoms")) {
    rd.fail("/continuation_atoms", "continuation atoms need a /tree to attach to");
  }

  if (const auto* rc = rd.optional_member(doc, "refinement_class")) {
    RefinementClassSpec spec;
    const auto kind = rd.string(rd.member(*rc, "/refinement_class", "kind"), "/refinement_class/kind");
    const auto parsed = parse_richness_kind(kind);
    if (!parsed) rd.fail("/refinement_class/kind", "unknown kind '" + kind + "'");
    spec.kind = *parsed;
    spec.sector = rd.string(rd.member(*rc, "/refinement_class", "sector"), "/refinement_class/sector");
    if (const auto* q = rd.optional_member(*rc, "denominator_bound")) {
      spec.denominator_bound = static_cast<int>(rd.index(*q, "/refinement_class/denominator_bound"));
    }
    if (const auto* h = rd.optional_member(*rc, "grid_step")) spec.grid_step = rd.number(*h, "/refinement_class/grid_step");
    try {
      (void)scenario.layer.sector(spec.sector);
    } catch (const Error&) {
      rd.fail("/refinement_class/sector", "unknown sector '" + spec.sector + "'");
    }
    scenario.refinement_class = spec;
  }

  if (const auto* list = rd.optional_member(doc, "expected")) {
    rd.array(*list, "/expected");
    static const std::set<std::string> quantities{"induced_weight", "born_weight", "realized_sums", "left_norms"};
    static const std::set<std::string> provenances{"published", "derived", "trivial"};
    for (std::size_t k = 0; k < list->size(); ++k) {
      const std::string ptr = "/expected/" + std::to_string(k);
      const auto& e = (*list)[k];
      Expectation x;
      x.quantity = rd.string(rd.member(e, ptr, "quantity"), ptr + "/quantity");
      if (!quantities.contains(x.quantity)) rd.fail(ptr + "/quantity", "unknown quantity '" + x.quantity + "'");
      x.provenance = rd.string(rd.member(e, ptr, "provenance"), ptr + "/provenance");
      if (!provenances.contains(x.provenance)) rd.fail(ptr + "/provenance", "expected published, derived or trivial");
      if (const auto* s = rd.optional_member(e, "sector")) x.sector = rd.string(*s, ptr + "/sector");
      if (const auto* ss = rd.optional_member(e, "sectors")) {
        rd.array(*ss, ptr + "/sectors");
        for (std::size_t i = 0; i < ss->size(); ++i) x.sectors.push_back(rd.string((*ss)[i], ptr + "/sectors/" + std::to_string(i)));
      }
      if (const auto* v = rd.optional_member(e, "value")) x.value = rd.number(*v, ptr + "/value");
      if (const auto* vs = rd.optional_member(e, "values")) {
        rd.array(*vs, ptr + "/values");
        for (std::size_t i = 0; i < vs->size(); ++i) x.values.push_back(rd.number((*vs)[i], ptr + "/values/" + std::to_string(i)));
      }
      const bool scalar = x.quantity == "induced_weight" || x.quantity == "born_weight";
      if (scalar && (x.sector.empty() || !x.value)) rd.fail(ptr, x.quantity + " needs sector and value");
      if (!scalar && x.values.empty()) rd.fail(ptr, x.quantity + " needs values");
      if (x.quantity == "realized_sums" && x.sectors.empty()) rd.fail(ptr, "realized_sums needs sectors");
      scenario.expected.push_back(std::move(x));
    }
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text, path.string());
}

json scenario_to_json(const Scenario& scenario) {
  json doc;
  doc["name"] = scenario.name;
  doc["ambient_dim"] = scenario.layer.ambient_dim();
  json state = json::array();
  for (const auto& a : scenario.layer.state().amplitudes()) state.push_back(amplitude_json(a));
  doc["state"] = state;
  json sectors = json::array();
  for (const auto& s : scenario.layer.sectors()) {
    json vectors = json::array();
    for (const auto& v : s.sector.basis()) {
      json amps = json::array();
      for (const auto& a : v.amplitudes()) amps.push_back(amplitude_json(a));
      vectors.push_back(amps);
    }
    sectors.push_back({{"name", s.name}, {"group", s.group}, {"vectors", vectors}});
  }
  doc["sectors"] = sectors;
  if (scenario.model) {
    json splits = json::array();
    for (const auto& n : scenario.model->nodes()) {
      if (n.children.size() == 2) {
        splits.push_back({{"parent", n.id},
                          {"left", scenario.model->nodes()[n.children[0]].id},
                          {"right", scenario.model->nodes()[n.children[1]].id}});
      }
    }
    doc["tree"] = {{"root", scenario.model->root()}, {"splits", splits}};
    json atoms = json::array();
    for (const auto& c : scenario.model->continuations()) {
      atoms.push_back({{"id", c.id}, {"sector", c.realized_sector}, {"weight", c.weight}});
    }
    doc["continuation_atoms"] = atoms;
  }
  if (scenario.refinement_class) {
    const auto& rc = *scenario.refinement_class;
    doc["refinement_class"] = {{"kind", std::string(to_string(rc.kind))},
                               {"sector", rc.sector},
                               {"denominator_bound", rc.denominator_bound},
                               {"grid_step", rc.grid_step}};
  }
  json expected = json::array();
  for (const auto& x : scenario.expected) {
    json e{{"quantity", x.quantity}, {"provenance", x.provenance}};
    if (!x.sector.empty()) e["sector"] = x.sector;
    if (!x.sectors.empty()) e["sectors"] = x.sectors;
    if (x.value) e["value"] = *x.value;
    if (!x.values.empty()) e["values"] = x.values;
    expected.push_back(e);
  }
  doc["expected"] = expected;
  return doc;
}

bool ScenarioResult::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.passed; });
}

ScenarioResult run_scenario(const Scenario& scenario) {
  ScenarioResult result{scenario.name, {}};
  auto add = [&](std::string id, bool passed, double residual, std::string detail) {
    result.checks.push_back({std::move(id), passed, residual, std::move(detail)});
  };
  const auto& layer = scenario.layer;

  for (const auto& s : layer.sectors()) {
    const auto v = validate_sector(layer, s.name);
    std::string detail;
    for (const auto& c : v.checks) {
      if (!c.passed) detail += c.condition + " failed (" + c.detail + "); ";
    }
    add("sector:" + s.name, v.passed(), 0.0, detail.empty() ? "all surrogates pass" : detail);
  }

  std::optional<Valuation> mu;
  if (scenario.model) {
    const auto& model = *scenario.model;
    mu = Valuation::from_model(model);
    for (const auto& id : model.refined_sectors()) {
      const auto verdict = check_partition(model, id);
      add("partition:" + id, verdict.passed(), 0.0, verdict.passed() ? "disjoint and covering" : "partition violated");
      if (verdict.passed()) {
        const auto st = check_refinement_stability(model, *mu, {id});
        add("stability:" + id, st.passed(), st.max_residual, "W(parent) - W(left) - W(right)");
      }
    }
  }

  for (const auto& x : scenario.expected) {
    const std::string id = x.quantity + (x.sector.empty() ? "" : ":" + x.sector);
    try {
      if (x.quantity == "induced_weight") {
        if (!scenario.model) throw Error(ErrorCode::PreconditionNotMet, "no continuation model");
        const double w = induced_weight(*scenario.model, *mu, x.sector);
        const double r = std::abs(w - *x.value);
        add(id, r <= 1e-9, r, x.provenance);
      } else if (x.quantity == "born_weight") {
        const double w = project(layer.state(), layer.sector(x.sector).sector).norm_squared();
        const double r = std::abs(w - *x.value);
        add(id, r <= 1e-9, r, x.provenance);
      } else if (x.quantity == "realized_sums") {
        std::vector<double> weights;
        for (const auto& name : x.sectors) weights.push_back(project(layer.state(), layer.sector(name).sector).norm_squared());
        const auto sums = realized_sums(weights);
        std::set<long long> got;
        std::set<long long> want;
        for (double s : sums) got.insert(std::llround(s / kSumQuantum));
        for (double s : x.values) want.insert(std::llround(s / kSumQuantum));
        add(id, got == want, 0.0, x.provenance + ", " + std::to_string(sums.size()) + " sums");
      } else if (x.quantity == "left_norms") {
        if (!scenario.refinement_class) throw Error(ErrorCode::PreconditionNotMet, "no refinement class");
        const auto& rc = *scenario.refinement_class;
        RefinementClass cls{rc.kind, rc.denominator_bound, layer.sector(rc.sector).sector, layer.state()};
        const auto norms = admissible_left_norms(cls, rc.grid_step);
        double worst = norms.size() == x.values.size() ? 0.0 : 1.0;
        for (std::size_t i = 0; i < std::min(norms.size(), x.values.size()); ++i) {
          worst = std::max(worst, std::abs(norms[i] - x.values[i]));
        }
        // Every left norm must also be realized by an actual refinement.
        for (const auto& ref : enumerate_refinements(cls, rc.grid_step)) {
          const auto p = pythagoras_check(layer.state(), ref);
          worst = std::max(worst, std::abs(p.residual()));
        }
        add(id, worst <= 1e-9, worst, x.provenance);
      }
    } catch (const Error& e) {
      add(id, false, 0.0, e.what());
    }
  }
  return result;
}

namespace {

constexpr std::string_view kSpinScenario = R"json({
  "name": "spin",
  "ambient_dim": 2,
  "state": [[0.6, 0.0], [0.8, 0.0]],
  "sectors": [
    {"name": "R", "group": "coarse", "basis_indices": [0, 1]},
    {"name": "up", "group": "spin", "basis_indices": [0]},
    {"name": "down", "group": "spin", "basis_indices": [1]}
  ],
  "tree": {"root": "R", "splits": [{"parent": "R", "left": "up", "right": "down"}]},
  "continuation_atoms": [
    {"id": "c_up", "sector": "up", "weight": "born"},
    {"id": "c_down", "sector": "down", "weight": "born"}
  ],
  "refinement_class": {"kind": "equal_split_only", "sector": "R"},
  "expected": [
    {"quantity": "induced_weight", "sector": "up", "value": 0.36, "provenance": "derived"},
    {"quantity": "induced_weight", "sector": "down", "value": 0.64, "provenance": "derived"},
    {"quantity": "induced_weight", "sector": "R", "value": 1.0, "provenance": "trivial"},
    {"quantity": "born_weight", "sector": "up", "value": 0.36, "provenance": "published"},
    {"quantity": "left_norms", "values": [0.0, 0.7071067811865476, 1.0], "provenance": "published"}
  ]
}
)json";

constexpr std::string_view kWorked4Scenario = R"json({
  "name": "worked4",
  "ambient_dim": 4,
  "state": [0.6324555320336759, 0.5477225575051661, 0.4472135954999579, 0.31622776601683794],
  "sectors": [
    {"name": "R", "group": "coarse", "basis_indices": [0, 1, 2, 3]},
    {"name": "S1", "group": "fine", "basis_indices": [0]},
    {"name": "S2", "group": "fine", "basis_indices": [1]},
    {"name": "S3", "group": "fine", "basis_indices": [2]},
    {"name": "S4", "group": "fine", "basis_indices": [3]},
    {"name": "S12", "group": "grouped", "basis_indices": [0, 1]},
    {"name": "S34", "group": "grouped", "basis_indices": [2, 3]}
  ],
  "tree": {
    "root": "R",
    "splits": [
      {"parent": "R", "left": "S12", "right": "S34"},
      {"parent": "S12", "left": "S1", "right": "S2"},
      {"parent": "S34", "left": "S3", "right": "S4"}
    ]
  },
  "continuation_atoms": [
    {"id": "c1", "sector": "S1", "weight": 0.40},
    {"id": "c2", "sector": "S2", "weight": 0.30},
    {"id": "c3", "sector": "S3", "weight": 0.20},
    {"id": "c4", "sector": "S4", "weight": 0.10}
  ],
  "refinement_class": {"kind": "saturated", "sector": "R", "grid_step": 0.25},
  "expected": [
    {"quantity": "induced_weight", "sector": "R", "value": 1.0, "provenance": "published"},
    {"quantity": "induced_weight", "sector": "S12", "value": 0.70, "provenance": "published"},
    {"quantity": "induced_weight", "sector": "S34", "value": 0.30, "provenance": "published"},
    {"quantity": "born_weight", "sector": "S1", "value": 0.40, "provenance": "published"},
    {"quantity": "realized_sums", "sectors": ["S1", "S2", "S3", "S4"],
     "values": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0], "provenance": "published"},
    {"quantity": "left_norms", "values": [0.0, 0.25, 0.5, 0.75, 1.0], "provenance": "trivial"}
  ]
}
)json";

}  // namespace

std::vector<std::pair<std::string, std::string_view>> builtin_scenarios() {
  return {{"spin", kSpinScenario}, {"worked4", kWorked4Scenario}};
}

}  // namespace rwl
