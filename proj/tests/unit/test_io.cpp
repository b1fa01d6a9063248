#include "doctest.h"
#include "pebblekit/json_io.hpp"
#include "pebblekit/render.hpp"

using namespace pebblekit;

TEST_CASE("json encodes rationals and vertices as text and pairs") {
  Distribution d(GridSpec(3, 3));
  d.set({1, 1}, 4);
  const Json j = to_json(d);
  CHECK(j["grid"]["topology"] == "plane");
  CHECK(j["units"][0]["vertex"] == Json::array({1, 1}));
  CHECK(j["units"][0]["count"] == "4/1");
  const Json w = to_json(weight_report(d));
  CHECK(w["rows"][0]["w"] == "1/1");
  CHECK(w["rows"][4]["excess"] == "3/1");
  CHECK(json_envelope("x")["schema_version"] == kJsonSchemaVersion);
  CHECK(to_json(coverage(d))["ratio"] == "9/4");
}

TEST_CASE("json round trip of a linear program") {
  const LpProblem p = unit_excess_problem();
  const LpProblem q = lp_problem_from_json(to_json(p));
  CHECK(q.objective == p.objective);
  CHECK(q.constraints == p.constraints);
  CHECK(q.rhs == p.rhs);
  CHECK(to_json(solve(q))["objective_value"] == "12/25");
  CHECK_THROWS_AS(lp_problem_from_json(Json::object()), InputError);
  CHECK_THROWS_AS(lp_problem_from_json(Json{{"objective", {"1/x"}}, {"constraints", Json::array()}, {"rhs", Json::array()}}),
                  InputError);
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(vertex_from_json(Json::array({2, 5})) == Vertex{2, 5});
  CHECK_THROWS_AS(vertex_from_json(Json::array({2})), InputError);
}

TEST_CASE("ascii rendering") {
  Distribution d(GridSpec(3, 3));
  d.set({1, 1}, 4);
  CHECK(render(d, RenderFormat::ascii) == "# 3x3 plane\n. . .\n. 4 .\n. . .\n");
  CHECK(render(d, RenderFormat::ascii, Overlay::weights) == "# 3x3 plane\n# # #\n# 4 #\n# # #\n");
  const std::string cov = render(gen_stripes(1, 1), RenderFormat::ascii, Overlay::coverage);
  CHECK(cov == "# 3x6 plane\n3 + 3\n+ + +\n. . .\n. . .\n+ + +\n3 + 3\n");
  CHECK_THROWS_AS(render(gen_uniform_frac(GridSpec(2, 2), 1), RenderFormat::ascii, Overlay::coverage), InputError);
  CHECK_THROWS_AS(parse_overlay("heat"), InputError);
}

TEST_CASE("svg rendering is deterministic") {
  const Distribution d = gen_stripes(1, 1);
  const std::string a = render(d, RenderFormat::svg, Overlay::coverage);
  CHECK(a == render(d, RenderFormat::svg, Overlay::coverage));
  CHECK(a.rfind("<svg", 0) == 0);
  // rows 2 and 3 are not reachable, so nothing there is shaded
  CHECK(a.find("y=\"48\" width=\"24\" height=\"24\" fill=\"#9ecae1\"") == std::string::npos);
  CHECK(a.find("y=\"24\" width=\"24\" height=\"24\" fill=\"#9ecae1\"") != std::string::npos);
}
