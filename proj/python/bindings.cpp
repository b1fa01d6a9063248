#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pebblekit/constructions.hpp"
#include "pebblekit/json_io.hpp"
#include "pebblekit/lp.hpp"
#include "pebblekit/optimal.hpp"
#include "pebblekit/oracle.hpp"
#include "pebblekit/render.hpp"
#include "pebblekit/verify.hpp"
#include "pebblekit/weight.hpp"

namespace py = pybind11;
using namespace pebblekit;

// Exact rationals cross the boundary as fractions.Fraction; ints and "p/q" strings are accepted.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || py::isinstance<py::bool_>(src) || py::isinstance<py::float_>(src)) return false;
    if (!py::isinstance<py::int_>(src) && !py::isinstance<py::str>(src) &&
        !py::isinstance(src, py::module_::import("fractions").attr("Fraction")))
      return false;
    try {
      value = parse_rational(py::str(src).cast<std::string>());
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

  static handle cast(const Rational& q, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(to_string(q)).release();
  }
};
}  // namespace pybind11::detail

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(q));
}

Rational rational(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw InputError("expected a number, got bool");
  return parse_rational(py::str(h).cast<std::string>());
}

py::tuple vertex(const Vertex& v) { return py::make_tuple(v.col, v.row); }

Vertex vertex(const py::handle& h) {
  const auto t = h.cast<std::pair<int, int>>();
  return {t.first, t.second};
}

py::list vertices(const std::set<Vertex>& vs) {
  py::list out;
  for (const auto& v : vs) out.append(vertex(v));
  return out;
}

SearchOptions search(std::uint64_t node_cap, unsigned threads) {
  SearchOptions o;
  o.node_cap = node_cap;
  o.threads = threads;
  return o;
}

py::object parsed_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object any_to_py(const AnyDistribution& d) {
  return std::visit([](const auto& x) { return py::cast(x); }, d);
}

template <class D>
void bind_distribution(py::module_& m, const char* name, const char* doc) {
  py::class_<D>(m, name, doc)
      .def(py::init([](const GridSpec& g, const py::dict& counts) {
             D d(g);
             for (const auto& [k, v] : counts) {
               if constexpr (std::is_same_v<D, Distribution>)
                 d.set(vertex(k), v.template cast<Count>());
               else
                 d.set(vertex(k), rational(v));
             }
             return d;
           }),
           py::arg("grid"), py::arg("counts") = py::dict())
      .def_property_readonly("grid", &D::grid)
      .def("__getitem__", [](const D& d, const py::handle& v) { return py::cast(d[vertex(v)]); })
      .def("set",
           [](D& d, const py::handle& v, const py::handle& c) -> D& {
             if constexpr (std::is_same_v<D, Distribution>)
               return d.set(vertex(v), c.cast<Count>());
             else
               return d.set(vertex(v), rational(c));
           },
           py::return_value_policy::reference_internal)
      .def("size", [](const D& d) { return py::cast(d.size()); })
      .def("__len__", &D::unit_count)
      .def("entries",
           [](const D& d) {
             py::dict out;
             for (const auto& [v, c] : d.entries()) out[vertex(v)] = py::cast(c);
             return out;
           })
      .def("serialize", [](const D& d) { return serialize_distribution(d); })
      .def("to_json", [](const D& d) { return parsed_json(to_json(d)); })
      .def("__eq__", [](const D& a, const D& b) { return a == b; })
      .def("__repr__", [name](const D& d) {
        return std::string(name) + "(" + to_string(d.grid()) + ", " + std::to_string(d.unit_count()) + " units)";
      });
}

}  // namespace

PYBIND11_MODULE(_pebblekit, m) {
  m.doc() = "Exact pebbling on grids and tori";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::enum_<Topology>(m, "Topology").value("plane", Topology::plane).value("torus", Topology::torus);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init([](int w, int h, bool torus) { return GridSpec(w, h, torus ? Topology::torus : Topology::plane); }),
           py::arg("width"), py::arg("height"), py::arg("torus") = false)
      .def_property_readonly("width", &GridSpec::width)
      .def_property_readonly("height", &GridSpec::height)
      .def_property_readonly("torus", &GridSpec::is_torus)
      .def_property_readonly("vertex_count", &GridSpec::vertex_count)
      .def("distance", [](const GridSpec& g, const py::handle& u, const py::handle& v) {
        return distance(g, vertex(u), vertex(v));
      })
      .def("neighbors",
           [](const GridSpec& g, const py::handle& v) {
             py::list out;
             for (const auto& u : g.neighbors(vertex(v))) out.append(vertex(u));
             return out;
           })
      .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
      .def("__repr__", [](const GridSpec& g) { return "Grid(" + to_string(g) + ")"; });

  bind_distribution<Distribution>(m, "Distribution", "Integer pebble counts on a grid.");
  bind_distribution<ContinuousDistribution>(m, "ContinuousDistribution", "Rational pebble amounts on a grid.");

  m.def("parse_distribution", [](const std::string& text) { return any_to_py(parse_distribution(text)); },
        py::arg("text"), "Parse the line-oriented distribution format.");
  m.def("read_distribution", [](const std::string& path) { return any_to_py(read_distribution_file(path)); },
        py::arg("path"));

  // weights
  m.def("weight", [](const Distribution& d, const py::handle& u) { return fraction(weight(d, vertex(u))); });
  m.def("weight", [](const ContinuousDistribution& d, const py::handle& u) { return fraction(weight(d, vertex(u))); });
  m.def("covering_ratio_ceiling", [](const Distribution& d) { return fraction(covering_ratio_ceiling(d)); });
  m.def("ceiling_infinite", [](const Distribution& d) { return fraction(ceiling_infinite(d)); });
  m.def("fractional_solvable", py::overload_cast<const Distribution&>(&fractional_solvable));
  m.def("fractional_solvable", py::overload_cast<const ContinuousDistribution&>(&fractional_solvable));
  m.def("single_pebble_weight_total", [](int r) { return fraction(single_pebble_weight_total(r)); });
  m.def(
      "weight_report",
      [](const Distribution& d, bool infinite) {
        return parsed_json(to_json(weight_report(d, infinite ? EvalMode::infinite : EvalMode::finite)));
      },
      py::arg("d"), py::arg("infinite") = false);

  // reachability
  m.def(
      "apply_move",
      [](const Distribution& d, const py::handle& from, const py::handle& to) { return apply_move(d, vertex(from), vertex(to)); },
      py::arg("d"), py::arg("src"), py::arg("dst"));
  m.def(
      "can_move_k",
      [](const Distribution& d, const py::handle& t, Count k, std::uint64_t cap, bool forward) {
        SearchOptions o = search(cap, 1);
        if (forward) o.strategy = SearchStrategy::forward;
        return can_move_k(d, vertex(t), k, o);
      },
      py::arg("d"), py::arg("target"), py::arg("k") = 1, py::arg("node_cap") = SearchOptions{}.node_cap,
      py::arg("forward") = false);
  m.def(
      "is_reachable",
      [](const Distribution& d, const py::handle& t, std::uint64_t cap) { return is_reachable(d, vertex(t), search(cap, 1)); },
      py::arg("d"), py::arg("target"), py::arg("node_cap") = SearchOptions{}.node_cap);
  m.def(
      "coverage",
      [](const Distribution& d, std::uint64_t cap, unsigned threads) {
        const CoverageReport c = coverage(d, search(cap, threads));
        py::dict out;
        out["reachable"] = vertices(c.reachable);
        out["cov"] = c.cov;
        out["ratio"] = fraction(c.ratio);
        out["boundary"] = vertices(c.boundary);
        return out;
      },
      py::arg("d"), py::arg("node_cap") = SearchOptions{}.node_cap, py::arg("threads") = 0);
  m.def(
      "is_solvable", [](const Distribution& d, std::uint64_t cap) { return is_solvable(d, search(cap, 0)); },
      py::arg("d"), py::arg("node_cap") = SearchOptions{}.node_cap);
  m.def("marginal_covering_ratio",
        [](const Distribution& d, const Distribution& dp) { return fraction(marginal_covering_ratio(d, dp)); });
  m.def("enumerate_reachable", [](const Distribution& d) { return vertices(enumerate_reachable(d)); });

  // linear programming
  m.def(
      "solve_lp",
      [](const py::list& objective, const py::list& constraints, const py::list& rhs) {
        LpProblem p;
        for (const auto& x : objective) p.objective.push_back(rational(x));
        for (const auto& x : rhs) p.rhs.push_back(rational(x));
        for (const auto& row : constraints) {
          std::vector<Rational> r;
          for (const auto& x : row.cast<py::list>()) r.push_back(rational(x));
          p.constraints.push_back(std::move(r));
        }
        p.validate();
        const LpSolution s = solve(p);
        py::dict out = parsed_json(to_json(s));
        if (s.status == LpStatus::optimal) {
          out["objective_value"] = fraction(s.objective_value);
          out["certificate_verified"] = verify_certificate(p, s.primal, s.dual);
        }
        return out;
      },
      py::arg("objective"), py::arg("constraints"), py::arg("rhs"),
      "minimize c.x subject to A x >= b, x >= 0 in exact arithmetic; values may be int, str or Fraction.");
  m.def("unit_excess_problem", [] { return parsed_json(to_json(unit_excess_problem())); });
  m.def(
      "fractional_optimal_pebbling",
      [](const GridSpec& g) {
        const auto f = fractional_optimal_pebbling(g);
        return py::make_tuple(fraction(f.value), f.witness);
      },
      py::arg("grid"), "Returns (value, witness).");

  // constructions
  m.def(
      "generate",
      [](const std::string& family, const py::kwargs& params) {
        PatternSpec spec;
        spec.family = parse_family(family);
        for (const auto& [k, v] : params) {
          const auto key = k.cast<std::string>();
          if (key == "inner")
            spec.inner = v.cast<Distribution>();
          else if (key == "torus")
            spec.params[key] = v.cast<bool>() ? 1 : 0;
          else
            spec.params[key] = rational(v);
        }
        return any_to_py(generate(spec));
      },
      py::arg("family"), "Generate a construction family; parameters as keyword arguments.");
  m.def("gen_stripes", &gen_stripes, py::arg("n"), py::arg("m"));
  m.def("gen_diag7", [](const GridSpec& g) { return gen_diag7(g); }, py::arg("grid"));
  m.def("gen_uniform_frac", [](const GridSpec& g, const py::handle& q) { return gen_uniform_frac(g, rational(q)); },
        py::arg("grid"), py::arg("q"));
  m.def("find_density7_pattern", [](int side) { return parsed_json(to_json(find_density7_pattern(side))); },
        py::arg("side") = 14);

  // search
  m.def(
      "optimal_pebbling_number",
      [](const GridSpec& g, std::uint64_t candidate_cap) {
        OptimalOptions o;
        o.candidate_cap = candidate_cap;
        const OptimalResult r = optimal_pebbling_number(g, o);
        return py::make_tuple(r.pi_opt, r.witness);
      },
      py::arg("grid"), py::arg("candidate_cap") = OptimalOptions{}.candidate_cap, "Returns (pi_opt, witness).");

  m.def(
      "run_verification",
      [](const std::string& scale) {
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_verification(parse_scale(scale));
        }
        return parsed_json(to_json(r));
      },
      py::arg("scale") = "small");

  m.def(
      "render",
      [](const py::object& d, const std::string& format, const std::string& overlay) {
        const AnyDistribution any = py::isinstance<Distribution>(d) ? AnyDistribution(d.cast<Distribution>())
                                                                    : AnyDistribution(d.cast<ContinuousDistribution>());
        return render(any, parse_render_format(format), parse_overlay(overlay));
      },
      py::arg("d"), py::arg("format") = "ascii", py::arg("overlay") = "none");

  m.attr("SCHEMA_VERSION") = kJsonSchemaVersion;
}
