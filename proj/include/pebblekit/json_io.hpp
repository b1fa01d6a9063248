#pragma once

#include "json.hpp"

#include "pebblekit/constructions.hpp"
#include "pebblekit/grid.hpp"
#include "pebblekit/lp.hpp"
#include "pebblekit/optimal.hpp"
#include "pebblekit/reach.hpp"
#include "pebblekit/verify.hpp"
#include "pebblekit/weight.hpp"

namespace pebblekit {

using Json = nlohmann::ordered_json;

/// Bumped whenever a field is renamed or removed.
constexpr int kJsonSchemaVersion = 1;

/// Top-level report object: {"schema_version": N, "kind": kind}.
Json json_envelope(std::string_view kind);

Json to_json(const Rational& q);
Json to_json(const Vertex& v);
Json to_json(const GridSpec& g);
Json to_json(const Distribution& d);
Json to_json(const ContinuousDistribution& d);
Json to_json(const CoverageReport& c);
Json to_json(const WeightReport& w);
Json to_json(const LpProblem& p);
Json to_json(const LpSolution& s);
Json to_json(const OptimalResult& r);
Json to_json(const SeriesEntry& e);
Json to_json(const Density7Pattern& p);
Json to_json(const Check& c);
Json to_json(const VerificationReport& r);

Rational rational_from_json(const Json& j);
Vertex vertex_from_json(const Json& j);
/// Throws InputError on a malformed problem.
LpProblem lp_problem_from_json(const Json& j);

}  // namespace pebblekit
