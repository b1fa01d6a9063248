#include "pebblekit/json_io.hpp"

namespace pebblekit {

Json json_envelope(std::string_view kind) {
  Json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["kind"] = std::string(kind);
  return j;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Vertex& v) { return Json::array({v.col, v.row}); }

Json to_json(const GridSpec& g) {
  return Json{{"width", g.width()}, {"height", g.height()}, {"topology", std::string(to_string(g.topology()))}};
}

namespace {

template <class D>
Json distribution_json(const D& d) {
  Json units = Json::array();
  for (const auto& [v, c] : d.entries()) units.push_back(Json{{"vertex", to_json(v)}, {"count", to_json(Rational(c))}});
  return Json{{"grid", to_json(d.grid())}, {"size", to_json(Rational(d.size()))}, {"units", units}};
}

Json vertex_list(const std::set<Vertex>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

}  // namespace

Json to_json(const Distribution& d) {
  Json j = distribution_json(d);
  j["continuous"] = false;
  return j;
}

Json to_json(const ContinuousDistribution& d) {
  Json j = distribution_json(d);
  j["continuous"] = true;
  return j;
}

Json to_json(const CoverageReport& c) {
  return Json{{"cov", c.cov},
              {"ratio", to_json(c.ratio)},
              {"reachable", vertex_list(c.reachable)},
              {"boundary", vertex_list(c.boundary)},
              {"nodes", c.nodes}};
}

Json to_json(const WeightReport& w) {
  Json rows = Json::array();
  for (const auto& r : w.rows) rows.push_back(Json{{"vertex", to_json(r.vertex)}, {"w", to_json(r.weight)}, {"excess", to_json(r.excess)}});
  Json j{{"mode", w.mode == EvalMode::finite ? "finite" : "infinite"},
         {"rows", rows},
         {"total_weight", to_json(w.total_weight)},
         {"total_excess", to_json(w.total_excess)},
         {"capped_total", to_json(w.capped_total)},
         {"ceiling", to_json(w.ceiling)}};
  if (w.mode == EvalMode::finite) j["min_weight"] = to_json(w.min_weight);
  return j;
}

namespace {

Json rational_vector(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

std::vector<Rational> rational_vector_from(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

}  // namespace

Json to_json(const LpProblem& p) {
  Json rows = Json::array();
  for (const auto& r : p.constraints) rows.push_back(rational_vector(r));
  Json j{{"objective", rational_vector(p.objective)}, {"constraints", rows}, {"rhs", rational_vector(p.rhs)}};
  if (!p.variable_names.empty()) j["variable_names"] = p.variable_names;
  return j;
}

Json to_json(const LpSolution& s) {
  Json j{{"status", std::string(to_string(s.status))}, {"pivots", s.pivots}};
  if (s.status == LpStatus::optimal) {
    j["objective_value"] = to_json(s.objective_value);
    j["primal"] = rational_vector(s.primal);
    j["dual"] = rational_vector(s.dual);
  } else {
    j["ray"] = rational_vector(s.ray);
  }
  return j;
}

Json to_json(const OptimalResult& r) {
  return Json{{"grid", to_json(r.grid)},
              {"pi_opt", r.pi_opt},
              {"fractional_bound", to_json(r.fractional_bound)},
              {"witness", to_json(r.witness)},
              {"nodes_explored", r.nodes_explored},
              {"solvability_checks", r.solvability_checks}};
}

Json to_json(const SeriesEntry& e) {
  return Json{{"n", e.n},
              {"pi_opt", e.pi_opt},
              {"ratio", to_json(e.ratio)},
              {"composed_bound", e.composed_bound ? Json(*e.composed_bound) : Json(nullptr)},
              {"fractional_bound", to_json(e.fractional_bound)},
              {"witness", to_json(e.witness)}};
}

Json to_json(const Density7Pattern& p) {
  auto basis = [](const std::array<LatticeVector, 2>& b) {
    return Json::array({Json::array({b[0][0], b[0][1]}), Json::array({b[1][0], b[1][1]})});
  };
  Json classes = Json::array();
  for (const auto& c : p.classes)
    classes.push_back(Json{{"representative", to_json(c.representative)},
                           {"shells", c.shells},
                           {"weight", to_json(c.weight)},
                           {"core_weight", to_json(c.core_weight)},
                           {"core_radius", c.core_radius}});
  Json rejected = Json::array();
  for (const auto& [b, w] : p.rejected) rejected.push_back(Json{{"basis", basis(b)}, {"min_weight", to_json(w)}});
  return Json{{"basis", basis(p.basis)},
              {"grid", to_json(p.grid)},
              {"min_weight", to_json(p.min_weight)},
              {"classes", classes},
              {"rejected", rejected},
              {"distribution", to_json(p.distribution)}};
}

Json to_json(const Check& c) {
  return Json{{"criterion", c.criterion},
              {"id", c.id},
              {"anchor", c.anchor},
              {"provenance", std::string(to_string(c.provenance))},
              {"expected", c.expected},
              {"computed", c.computed},
              {"passed", c.passed},
              {"seconds", c.seconds}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json criteria = Json::array();
  for (int i = 1; i <= kCriterionCount; ++i)
    criteria.push_back(Json{{"criterion", i}, {"title", std::string(criterion_title(i))}, {"passed", r.criterion_passed(i)}});
  return Json{{"scale", std::string(to_string(r.scale))},
              {"passed", r.passed()},
              {"failures", r.failures()},
              {"seconds", r.seconds},
              {"criteria", criteria},
              {"checks", checks}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("bad rational: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rational must be a \"p/q\" string or an integer");
}

Vertex vertex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw InputError("vertex must be [col, row]");
  return {j[0].get<int>(), j[1].get<int>()};
}

LpProblem lp_problem_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("LP problem must be an object");
  for (const char* key : {"objective", "constraints", "rhs"})
    if (!j.contains(key)) throw InputError(std::string("LP problem lacks \"") + key + "\"");
  LpProblem p;
  p.objective = rational_vector_from(j["objective"], "objective");
  p.rhs = rational_vector_from(j["rhs"], "rhs");
  if (!j["constraints"].is_array()) throw InputError("constraints must be an array of rows");
  for (const auto& row : j["constraints"]) p.constraints.push_back(rational_vector_from(row, "constraint row"));
  if (j.contains("variable_names")) p.variable_names = j["variable_names"].get<std::vector<std::string>>();
  p.validate();
  return p;
}

}  // namespace pebblekit
