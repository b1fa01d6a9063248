#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "pebblekit/constructions.hpp"
#include "pebblekit/json_io.hpp"
#include "pebblekit/lp.hpp"
#include "pebblekit/optimal.hpp"
#include "pebblekit/render.hpp"
#include "pebblekit/verify.hpp"
#include "pebblekit/weight.hpp"

using namespace pebblekit;

namespace {

enum Exit { ok = 0, failed = 1, bad_input = 2, budget = 3 };

struct Globals {
  std::uint64_t node_cap = SearchOptions{}.node_cap;
  unsigned threads = 0;

  SearchOptions search() const {
    SearchOptions o;
    o.node_cap = node_cap;
    o.threads = threads;
    return o;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_text_file(out_path, text);
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

Distribution require_integer(const AnyDistribution& d, const std::string& what) {
  if (const auto* x = std::get_if<Distribution>(&d)) return *x;
  throw InputError(what + " needs an integer distribution");
}

// -- gen ------------------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::optional<int> n, m, k, side;
  std::vector<int> torus, grid;
  std::string q;
  std::string inner;
  bool bare = false;
  std::string out;
};

Family family_from_cli(const std::string& name) {
  if (name == "fig4") return Family::stripes;
  if (name == "fig4-augmented" || name == "fig4_augmented") return Family::stripes_augmented;
  return parse_family(name);
}

int run_gen(const GenArgs& a, const Globals& gl) {
  PatternSpec spec;
  spec.family = family_from_cli(a.family);
  auto put = [&](const char* key, const std::optional<int>& v) {
    if (v) spec.params[key] = *v;
  };
  put("n", a.n);
  put("m", a.m);
  put("k", a.k);
  put("side", a.side);
  if (!a.torus.empty() && !a.grid.empty()) throw InputError("give either --torus or --grid, not both");
  const auto& dims = a.torus.empty() ? a.grid : a.torus;
  if (!dims.empty()) {
    spec.params["width"] = dims[0];
    spec.params["height"] = dims[1];
    spec.params["torus"] = a.torus.empty() ? 0 : 1;
  }
  if (!a.q.empty()) spec.params["q"] = parse_rational(a.q);
  if (a.bare) {
    spec.params["with_unit2"] = 0;
    spec.params["with_unit"] = 0;
  }
  if (!a.inner.empty()) {
    spec.inner = require_integer(read_distribution_file(a.inner), "--inner");
    if (!a.n && spec.family == Family::block_composition) throw InputError("block-composition needs -n");
  }
  const AnyDistribution d = generate(spec, gl.search());
  emit(std::visit([](const auto& x) { return serialize_distribution(x); }, d), a.out);
  return ok;
}

// -- analyze --------------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  bool coverage = false, weights = false, ceiling = false, infinite = false;
  std::string out;
};

Json continuous_weights(const ContinuousDistribution& d) {
  const auto field = weight_field(d);
  const GridSpec& g = d.grid();
  Json rows = Json::array();
  Rational least = field.empty() ? Rational(0) : field[0];
  for (std::size_t i = 0; i < field.size(); ++i) {
    rows.push_back(Json{{"vertex", to_json(g.vertex(i))}, {"w", to_json(field[i])}, {"excess", to_json(excess_of(field[i]))}});
    least = min(least, field[i]);
  }
  return Json{{"mode", "finite"}, {"rows", rows}, {"min_weight", to_json(least)},
              {"fractional_solvable", fractional_solvable(d)}};
}

int run_analyze(const AnalyzeArgs& a, const Globals& gl) {
  const AnyDistribution any = read_distribution_file(a.path);
  const bool all = !a.coverage && !a.weights && !a.ceiling;
  Json j = json_envelope("analysis");
  j["distribution"] = std::visit([](const auto& d) { return to_json(d); }, any);
  const EvalMode mode = a.infinite ? EvalMode::infinite : EvalMode::finite;
  if (const auto* d = std::get_if<Distribution>(&any)) {
    if (all || a.coverage) j["coverage"] = to_json(coverage(*d, gl.search()));
    if (all || a.weights) {
      Json w = to_json(weight_report(*d, mode));
      if (mode == EvalMode::finite) w["fractional_solvable"] = fractional_solvable(*d);
      j["weights"] = w;
    }
    if (all || a.ceiling) j["ceiling"] = to_json(mode == EvalMode::infinite ? ceiling_infinite(*d) : covering_ratio_ceiling(*d));
  } else {
    const auto& c = std::get<ContinuousDistribution>(any);
    if (a.coverage) throw InputError("coverage needs an integer distribution");
    if (a.infinite) throw InputError("infinite mode needs an integer distribution");
    if (a.ceiling) throw InputError("the covering ratio ceiling needs an integer distribution");
    j["weights"] = continuous_weights(c);
  }
  j["mode"] = mode == EvalMode::infinite ? "infinite" : "finite";
  emit_json(j, a.out);
  return ok;
}

// -- reach ----------------------------------------------------------------------------------

struct ReachArgs {
  std::string path;
  std::vector<int> target;
  long long k = 1;
  bool forward = false;
};

int run_reach(const ReachArgs& a, const Globals& gl) {
  const Distribution d = require_integer(read_distribution_file(a.path), "reach");
  SearchOptions o = gl.search();
  if (a.forward) o.strategy = SearchStrategy::forward;
  const Vertex t{a.target[0], a.target[1]};
  const ReachQuery q = ReachEngine(d, o).query(t, a.k);
  Json j = json_envelope("reach");
  j["target"] = to_json(t);
  j["k"] = a.k;
  j["status"] = q.status == ReachStatus::reachable     ? "reachable"
                : q.status == ReachStatus::unreachable ? "unreachable"
                                                       : "budget_exceeded";
  j["nodes"] = q.nodes;
  emit_json(j, "");
  return q.status == ReachStatus::budget_exceeded ? budget : ok;
}

// -- lp -------------------------------------------------------------------------------------

struct LpArgs {
  std::string problem = "unit-excess";
  std::string file;
  std::vector<int> torus, grid;
  std::string out;
};

int run_lp(const LpArgs& a, const Globals&) {
  LpProblem p;
  Json j = json_envelope("lp");
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw InputError("cannot open " + a.file);
    Json src;
    try {
      src = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("bad JSON: ") + e.what());
    }
    p = lp_problem_from_json(src.contains("problem") ? src["problem"] : src);
    j["problem_name"] = a.file;
  } else if (a.problem == "unit-excess") {
    p = unit_excess_problem();
  } else if (a.problem == "unit-excess-as-printed") {
    p = unit_excess_problem_as_printed();
  } else if (a.problem == "fractional") {
    const auto& dims = a.torus.empty() ? a.grid : a.torus;
    if (dims.empty()) throw InputError("fractional LP needs --torus W H or --grid W H");
    const GridSpec g(dims[0], dims[1], a.torus.empty() ? Topology::plane : Topology::torus);
    const FractionalOptimum f = fractional_optimal_pebbling(g);
    p = fractional_pebbling_problem(g);
    j["witness"] = to_json(f.witness);
    j["witness_fractional_solvable"] = fractional_solvable(f.witness);
  } else {
    throw InputError("unknown problem '" + a.problem + "', expected unit-excess, unit-excess-as-printed or fractional");
  }
  if (a.file.empty()) j["problem_name"] = a.problem;
  const LpSolution s = solve(p);
  j["problem"] = to_json(p);
  j["solution"] = to_json(s);
  switch (s.status) {
    case LpStatus::optimal: j["certificate_verified"] = verify_certificate(p, s.primal, s.dual); break;
    case LpStatus::infeasible: j["certificate_verified"] = verify_infeasibility(p, s.ray); break;
    case LpStatus::unbounded: j["certificate_verified"] = verify_unbounded_ray(p, s.ray); break;
  }
  emit_json(j, a.out);
  return j["certificate_verified"].get<bool>() ? ok : failed;
}

// -- optimal --------------------------------------------------------------------------------

struct OptimalArgs {
  int max_n = 3;
  std::string witness_dir = "witnesses";
  std::string json_out;
  std::uint64_t candidate_cap = OptimalOptions{}.candidate_cap;
};

int run_optimal(const OptimalArgs& a, const Globals& gl) {
  OptimalOptions o;
  o.search = gl.search();
  o.candidate_cap = a.candidate_cap;
  std::filesystem::create_directories(a.witness_dir);
  Json j = json_envelope("optimal-series");
  j["rows"] = Json::array();
  std::cout << std::left << std::setw(4) << "n" << std::setw(8) << "pi_opt" << std::setw(10) << "ratio"
            << std::setw(12) << "composed" << std::setw(14) << "fractional" << "witness\n";
  optimal_ratio_series(a.max_n, o, [&](const SeriesEntry& e) {
    const std::string path =
        (std::filesystem::path(a.witness_dir) / ("optimal-" + std::to_string(e.n) + "x" + std::to_string(e.n) + ".txt")).string();
    write_text_file(path, serialize_distribution(e.witness));
    std::cout << std::setw(4) << e.n << std::setw(8) << e.pi_opt << std::setw(10) << to_string(e.ratio) << std::setw(12)
              << (e.composed_bound ? std::to_string(*e.composed_bound) : "-") << std::setw(14)
              << to_string(e.fractional_bound) << path << std::endl;
    Json row = to_json(e);
    row["witness_path"] = path;
    j["rows"].push_back(row);
  });
  if (!a.json_out.empty()) emit_json(j, a.json_out);
  return ok;
}

// -- verify-paper ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string scale = "small";
  std::string json_out;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a, const Globals& gl) {
  const Scale scale = parse_scale(a.scale);
  const VerificationReport r = run_verification(scale, gl.search(), [&](const Check& c) {
    if (a.quiet) return;
    std::cout << (c.passed ? "PASS " : "FAIL ") << '[' << c.criterion << "] " << c.id << " (" << to_string(c.provenance)
              << "): expected " << c.expected << ", got " << c.computed << std::endl;
  });
  std::cout << "\n";
  for (int i = 1; i <= kCriterionCount; ++i)
    std::cout << (r.criterion_passed(i) ? "PASS" : "FAIL") << " criterion " << i << ": " << criterion_title(i) << "\n";
  std::cout << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks passed in " << std::fixed
            << std::setprecision(2) << r.seconds << " s\n";
  if (!a.json_out.empty()) {
    Json j = json_envelope("verification");
    j.update(to_json(r));
    emit_json(j, a.json_out);
  }
  return r.passed() ? ok : failed;
}

// -- render ---------------------------------------------------------------------------------

struct RenderArgs {
  std::string path;
  std::string format = "ascii";
  std::string overlay = "none";
  std::string out;
};

int run_render(const RenderArgs& a, const Globals& gl) {
  emit(render(read_distribution_file(a.path), parse_render_format(a.format), parse_overlay(a.overlay), gl.search()),
       a.out);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pebbling toolkit for grids and tori"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--node-cap", gl.node_cap, "search nodes per reachability query")->capture_default_str();
  app.add_option("--threads", gl.threads, "coverage workers (0 reads PEBBLEKIT_THREADS)")->capture_default_str();
  app.fallthrough();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a construction as a distribution file");
  g->add_option("family", gen.family,
                "diag7, row-ones, cascade-ones, stripes (fig4), stripes-augmented (fig4-augmented), uniform-frac, "
                "density7-frac, block-composition")
      ->required();
  g->add_option("-n", gen.n, "stripes: half-width; block-composition: side");
  g->add_option("-m", gen.m, "stripes: number of bands");
  g->add_option("-k", gen.k, "row and cascade families: number of ones");
  g->add_option("--side", gen.side, "density7-frac: torus side (multiple of 7)");
  g->add_option("--torus", gen.torus, "torus W H")->expected(2);
  g->add_option("--grid", gen.grid, "plane grid W H")->expected(2);
  g->add_option("--q", gen.q, "uniform-frac: amount per vertex, p/q");
  g->add_option("--inner", gen.inner, "block-composition: inner distribution file");
  g->add_flag("--bare", gen.bare, "row and cascade families: leave out the extra unit");
  g->add_option("-o,--out", gen.out, "output file (default stdout)");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "coverage, weights and ceiling of a distribution file as JSON");
  a->add_option("file", an.path)->required()->check(CLI::ExistingFile);
  a->add_flag("--coverage", an.coverage);
  a->add_flag("--weights", an.weights);
  a->add_flag("--ceiling", an.ceiling);
  a->add_flag("--infinite-mode", an.infinite, "read the distribution as sitting on the unbounded grid");
  a->add_option("-o,--out", an.out);

  ReachArgs re;
  auto* r = app.add_subcommand("reach", "can k pebbles be moved to a target");
  r->add_option("file", re.path)->required()->check(CLI::ExistingFile);
  r->add_option("--target", re.target, "COL ROW")->expected(2)->required();
  r->add_option("-k", re.k)->capture_default_str();
  r->add_flag("--forward", re.forward, "use the forward move search only");

  LpArgs lp;
  auto* l = app.add_subcommand("lp", "solve a built-in or JSON linear program exactly");
  l->add_option("--problem", lp.problem, "unit-excess, unit-excess-as-printed or fractional")->capture_default_str();
  l->add_option("--file", lp.file, "JSON problem {objective, constraints, rhs}")->check(CLI::ExistingFile);
  l->add_option("--torus", lp.torus)->expected(2);
  l->add_option("--grid", lp.grid)->expected(2);
  l->add_option("-o,--out", lp.out);

  OptimalArgs op;
  auto* o = app.add_subcommand("optimal", "optimal pebbling numbers of n x n grids");
  o->add_option("--max-n", op.max_n)->capture_default_str();
  o->add_option("--witness-dir", op.witness_dir)->capture_default_str();
  o->add_option("--json", op.json_out, "write the table as JSON");
  o->add_option("--candidate-cap", op.candidate_cap)->capture_default_str();

  VerifyArgs ve;
  auto* v = app.add_subcommand("verify-paper", "run every acceptance check");
  v->add_option("--scale", ve.scale, "small or full-desk")->capture_default_str();
  v->add_option("--json", ve.json_out, "write the report as JSON");
  v->add_flag("-q,--quiet", ve.quiet, "only print the per-criterion summary");

  RenderArgs rn;
  auto* d = app.add_subcommand("render", "draw a distribution file");
  d->add_option("file", rn.path)->required()->check(CLI::ExistingFile);
  d->add_option("--format", rn.format, "ascii or svg")->capture_default_str();
  d->add_option("--overlay", rn.overlay, "none, coverage or weights")->capture_default_str();
  d->add_option("-o,--out", rn.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return run_gen(gen, gl);
    if (*a) return run_analyze(an, gl);
    if (*r) return run_reach(re, gl);
    if (*l) return run_lp(lp, gl);
    if (*o) return run_optimal(op, gl);
    if (*v) return run_verify(ve, gl);
    if (*d) return run_render(rn, gl);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return budget;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return failed;
}
