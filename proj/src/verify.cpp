#include "pebblekit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "pebblekit/constructions.hpp"
#include "pebblekit/lp.hpp"
#include "pebblekit/optimal.hpp"
#include "pebblekit/oracle.hpp"
#include "pebblekit/weight.hpp"

namespace pebblekit {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::published: return "published";
    case Provenance::trivial: return "trivial";
    case Provenance::derived: return "derived";
  }
  return "derived";
}

std::string_view to_string(Scale s) { return s == Scale::small ? "small" : "full-desk"; }

Scale parse_scale(std::string_view text) {
  if (text == "small") return Scale::small;
  if (text == "full-desk" || text == "full_desk") return Scale::full_desk;
  throw InputError("unknown scale '" + std::string(text) + "', expected small or full-desk");
}

bool VerificationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

bool VerificationReport::criterion_passed(int criterion) const {
  bool any = false;
  for (const auto& c : checks)
    if (c.criterion == criterion) {
      any = true;
      if (!c.passed) return false;
    }
  return any;
}

std::string_view criterion_title(int criterion) {
  static constexpr std::string_view titles[] = {
      "covering-ratio fixtures for units of size 2",
      "infinite-grid ceiling fixtures",
      "unit-excess LP optimum and certificate",
      "single-pebble weight total tends to 9",
      "striped family: coverage, ratios, ceilings, augmentation",
      "diagonal pattern on the 14x14 torus",
      "fractional optima, uniform 1/9, density-1/7 lattice",
      "row of ones: growing marginal covering ratio",
      "striped augmentation: ratio up, ceiling down",
      "optimal pebbling numbers and their bounds",
      "property suites and naive cross-check",
  };
  if (criterion < 1 || criterion > kCriterionCount) return "unknown";
  return titles[criterion - 1];
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(const Rational& q) { return to_string(q); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(long long v) { return std::to_string(v); }
std::string str(bool b) { return b ? "true" : "false"; }

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + str(xs[i]);
  return s + "]";
}

Rational ratio_of(std::size_t num, Count den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

class Suite {
 public:
  Suite(Scale scale, const SearchOptions& options, const std::function<void(const Check&)>& on_check)
      : options_(options), on_check_(on_check) {
    report_.scale = scale;
  }

  bool full() const { return report_.scale == Scale::full_desk; }
  const SearchOptions& options() const { return options_; }

  void record(int criterion, std::string id, std::string anchor, Provenance prov, std::string expected,
              std::string computed, bool passed, double seconds) {
    Check c{criterion, std::move(id), std::move(anchor), prov, std::move(expected), std::move(computed), passed, seconds};
    report_.checks.push_back(c);
    if (on_check_) on_check_(report_.checks.back());
  }

  /// Runs `body`; an exception turns into a failed check carrying its message.
  void guarded(int criterion, const std::string& id, const std::string& anchor, Provenance prov,
               const std::string& expected, const std::function<void()>& body) {
    const auto t0 = Clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      record(criterion, id, anchor, prov, expected, std::string("error: ") + e.what(), false, since(t0));
    }
  }

  /// Coverage that also feeds the ceiling-versus-ratio property.
  CoverageReport cover(const Distribution& d, const std::string& label) {
    CoverageReport c = coverage(d, options_);
    instances_.push_back({label, c.ratio, covering_ratio_ceiling(d)});
    return c;
  }

  struct Instance {
    std::string label;
    Rational ratio;
    Rational ceiling;
  };
  const std::vector<Instance>& instances() const { return instances_; }

  VerificationReport finish(double seconds) {
    report_.seconds = seconds;
    return std::move(report_);
  }

 private:
  SearchOptions options_;
  std::function<void(const Check&)> on_check_;
  VerificationReport report_;
  std::vector<Instance> instances_;
};

// -- 1 --------------------------------------------------------------------------------------

void unit_fixtures(Suite& s) {
  const auto t0 = Clock::now();
  const GridSpec grids[] = {GridSpec(11, 11), GridSpec(12, 10)};
  for (const auto& g : grids) {
    const Vertex c{g.width() / 2, g.height() / 2};
    const std::string tag = std::to_string(g.width()) + "x" + std::to_string(g.height());
    s.guarded(1, "unit2-coverage-" + tag, "a single unit of size 2 reaches 5 vertices, ratio 5/2",
              Provenance::published, "cov 5, ratio 5/2", [&] {
                const auto t1 = Clock::now();
                Distribution d(g);
                d.set(c, 2);
                const auto cov = s.cover(d, "unit2-" + tag);
                require_border_margin(cov, g, 3);
                s.record(1, "unit2-coverage-" + tag, "a single unit of size 2 reaches 5 vertices, ratio 5/2",
                         Provenance::published, "cov 5, ratio 5/2",
                         "cov " + str(cov.cov) + ", ratio " + str(cov.ratio), cov.cov == 5 && cov.ratio == Rational(5, 2),
                         since(t1));
              });
    s.guarded(1, "adjacent-unit2-coverage-" + tag, "two adjacent units of size 2 reach 8 vertices, ratio 2",
              Provenance::published, "cov 8, ratio 2/1", [&] {
                const auto t1 = Clock::now();
                Distribution d(g);
                d.set({c.col - 1, c.row}, 2);
                d.set(c, 2);
                const auto cov = s.cover(d, "adjacent-unit2-" + tag);
                require_border_margin(cov, g, 3);
                s.record(1, "adjacent-unit2-coverage-" + tag, "two adjacent units of size 2 reach 8 vertices, ratio 2",
                         Provenance::published, "cov 8, ratio 2/1",
                         "cov " + str(cov.cov) + ", ratio " + str(cov.ratio), cov.cov == 8 && cov.ratio == 2, since(t1));
              });
  }
  const double secs = since(t0);
  s.record(1, "unit-fixtures-runtime", "the four fixture coverages finish within a second", Provenance::derived,
           "< 1 s", std::to_string(secs) + " s", secs < 1.0, secs);
}

// -- 2 --------------------------------------------------------------------------------------

void ceiling_fixtures(Suite& s) {
  const GridSpec g(9, 9);
  Distribution one(g), two(g), pair(g);
  one.set({4, 4}, 1);
  two.set({4, 4}, 2);
  pair.set({4, 4}, 2);
  pair.set({5, 4}, 2);
  struct Case {
    const char* id;
    const char* anchor;
    Provenance prov;
    Rational expected;
    std::function<Rational()> compute;
  };
  const std::vector<Case> cases = {
      {"unit2-ceiling-infinite", "ceiling of a unit of size 2 on the unbounded grid is 8.5", Provenance::published,
       Rational(17, 2), [&] { return ceiling_infinite(two); }},
      {"adjacent-unit2-ceiling-infinite", "ceiling of two adjacent units of size 2 on the unbounded grid is 7.25",
       Provenance::published, Rational(29, 4), [&] { return ceiling_infinite(pair); }},
      {"unit1-ceiling-infinite", "a single pebble has no excess, ceiling 9", Provenance::trivial, Rational(9),
       [&] { return ceiling_infinite(one); }},
      {"marginal-ceiling-unit1-to-unit2", "numerators 17 and 9 give a marginal ceiling of 8", Provenance::derived,
       Rational(8), [&] { return marginal_covering_ratio_ceiling(one, two, EvalMode::infinite); }},
      {"marginal-ceiling-unit2-to-pair", "numerators 29 and 17 over two added pebbles give 6", Provenance::derived,
       Rational(6), [&] { return marginal_covering_ratio_ceiling(two, pair, EvalMode::infinite); }},
  };
  for (const auto& c : cases)
    s.guarded(2, c.id, c.anchor, c.prov, str(c.expected), [&] {
      const auto t0 = Clock::now();
      const Rational got = c.compute();
      s.record(2, c.id, c.anchor, c.prov, str(c.expected), str(got), got == c.expected, since(t0));
    });
}

// -- 3 --------------------------------------------------------------------------------------

void unit_excess_lp(Suite& s) {
  s.guarded(3, "unit-excess-lp", "minimum excess at a size-1 unit is 12/25, with a verified duality certificate",
            Provenance::published, "optimal 12/25, certificate ok", [&] {
              const auto t0 = Clock::now();
              const LpProblem p = unit_excess_problem();
              const LpSolution sol = solve(p);
              const bool cert = sol.status == LpStatus::optimal && verify_certificate(p, sol.primal, sol.dual);
              s.record(3, "unit-excess-lp", "minimum excess at a size-1 unit is 12/25, with a verified duality certificate",
                       Provenance::published, "optimal 12/25, certificate ok",
                       std::string(to_string(sol.status)) + " " + str(sol.objective_value) +
                           (cert ? ", certificate ok" : ", certificate FAILED"),
                       cert && sol.objective_value == Rational(12, 25), since(t0));
            });
  s.guarded(3, "unit-excess-minimizer", "x = 0, y = 12/25 is feasible with objective 12/25", Provenance::published,
            "feasible, objective 12/25", [&] {
              const auto t0 = Clock::now();
              const LpProblem p = unit_excess_problem();
              ExcessRegionProfile prof;
              for (auto& x : prof.x) x = 0;
              for (auto& y : prof.y) y = Rational(12, 25);
              const auto v = prof.to_vector();
              const bool feas = primal_feasible(p, v);
              const Rational obj = prof.excess_at_unit();
              s.record(3, "unit-excess-minimizer", "x = 0, y = 12/25 is feasible with objective 12/25",
                       Provenance::published, "feasible, objective 12/25",
                       std::string(feas ? "feasible" : "infeasible") + ", objective " + str(obj),
                       feas && obj == Rational(12, 25), since(t0));
            });
  s.guarded(3, "unit-excess-lp-as-printed",
            "with 1/8 in place of the geometric 1/4 on one diagonal row the optimum moves to 114/233",
            Provenance::derived, "114/233", [&] {
              const auto t0 = Clock::now();
              const LpProblem p = unit_excess_problem_as_printed();
              const LpSolution sol = solve(p);
              const bool ok = sol.status == LpStatus::optimal && verify_certificate(p, sol.primal, sol.dual);
              s.record(3, "unit-excess-lp-as-printed",
                       "with 1/8 in place of the geometric 1/4 on one diagonal row the optimum moves to 114/233",
                       Provenance::derived, "114/233", str(sol.objective_value),
                       ok && sol.objective_value == Rational(114, 233), since(t0));
            });
  s.guarded(3, "ratio-upper-bound", "covering ratio of a solvable integer distribution is at most 9 - 12/25 = 213/25",
            Provenance::published, "213/25", [&] {
              const auto t0 = Clock::now();
              const Rational b = integer_fractional_ratio_bound();
              s.record(3, "ratio-upper-bound", "covering ratio of a solvable integer distribution is at most 9 - 12/25 = 213/25",
                       Provenance::published, "213/25", str(b), b == Rational(213, 25), since(t0));
            });
}

// -- 4 --------------------------------------------------------------------------------------

void single_pebble_total(Suite& s) {
  s.guarded(4, "single-pebble-weight-total", "one pebble contributes 9 in total; partial sum to radius 30 is within 2^-20",
            Provenance::published, "9 - S(30) <= 2^-20", [&] {
              const auto t0 = Clock::now();
              const Rational partial = single_pebble_weight_total(30);
              const Rational gap = Rational(9) - partial;
              const bool ok = gap >= 0 && gap <= pow2_inv(20);
              s.record(4, "single-pebble-weight-total",
                       "one pebble contributes 9 in total; partial sum to radius 30 is within 2^-20",
                       Provenance::published, "9 - S(30) <= 2^-20", "9 - S(30) = " + str(gap), ok, since(t0));
            });
  s.guarded(4, "single-pebble-weight-increasing", "partial sums increase strictly towards 9", Provenance::trivial,
            "strictly increasing, below 9", [&] {
              const auto t0 = Clock::now();
              bool ok = true;
              Rational prev = 0;
              for (int r = 0; r <= 30; ++r) {
                const Rational cur = single_pebble_weight_total(r);
                ok = ok && cur > prev && cur < 9;
                prev = cur;
              }
              s.record(4, "single-pebble-weight-increasing", "partial sums increase strictly towards 9",
                       Provenance::trivial, "strictly increasing, below 9", ok ? "yes" : "no", ok, since(t0));
            });
}

// -- 5 and 9 --------------------------------------------------------------------------------

void stripes(Suite& s) {
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 2; ++m) {
      const std::string tag = "stripes-n" + std::to_string(n) + "-m" + std::to_string(m);
      const auto t0 = Clock::now();
      s.guarded(5, tag, "striped family", Provenance::published, "instance completes", [&] {
        const Distribution base = gen_stripes(n, m);
        const GridSpec& g = base.grid();
        const auto cov = s.cover(base, tag);

        auto t1 = Clock::now();
        std::set<Vertex> rows_014;
        for (const auto& v : g.vertices())
          if (v.row % 5 == 0 || v.row % 5 == 1 || v.row % 5 == 4) rows_014.insert(v);
        s.record(5, tag + "-coverage", "exactly the rows congruent to 0, 1, 4 mod 5 are reachable",
                 Provenance::published, str(rows_014.size()) + " vertices in rows 0,1,4 mod 5",
                 str(cov.cov) + " reachable" + (cov.reachable == rows_014 ? ", same set" : ", different set"),
                 cov.reachable == rows_014, since(t1));

        t1 = Clock::now();
        const Rational expect_ratio = stripes_ratio(n, m);
        s.record(5, tag + "-ratio", "covering ratio (3m+1)(2n+1)/(3(n+1)(m+1))", Provenance::published,
                 str(expect_ratio), str(cov.ratio), cov.ratio == expect_ratio, since(t1));

        t1 = Clock::now();
        const Rational ceil = covering_ratio_ceiling(base);
        s.record(5, tag + "-ceiling", "covering ratio ceiling (5m+1)(2n+1)/(3(n+1)(m+1))", Provenance::published,
                 str(stripes_ceiling(n, m)), str(ceil), ceil == stripes_ceiling(n, m), since(t1));

        t1 = Clock::now();
        Rational least_gap = 100;
        for (const auto& v : g.vertices())
          if (v.row % 5 == 2 || v.row % 5 == 3) least_gap = min(least_gap, weight(base, v));
        s.record(5, tag + "-gap-row-weight", "every vertex in rows 2,3 mod 5 has weight at least 3/4 + 3/8 = 9/8",
                 Provenance::published, ">= 9/8", str(least_gap), least_gap >= Rational(9, 8), since(t1));

        t1 = Clock::now();
        const StripeAugmentation aug = augment_stripes(n, m, s.options());
        std::vector<Rational> marginals;
        Distribution cur = base;
        for (const auto& u : aug.units) {
          Distribution next = cur;
          next.set(u, 2);
          marginals.push_back(marginal_covering_ratio_ceiling(cur, next));
          cur = std::move(next);
        }
        const bool zero = std::all_of(marginals.begin(), marginals.end(), [](const Rational& q) { return q == 0; });
        s.record(5, tag + "-augmentation-marginal-ceiling", "each added unit of size 2 has marginal ceiling 0",
                 Provenance::published, "all 0", join(marginals), zero && !marginals.empty(), since(t1));

        t1 = Clock::now();
        const auto acov = s.cover(aug.augmented, tag + "-augmented");
        const bool solvable = acov.cov == g.vertex_count();
        const Rational expect_aug = stripes_augmented_ratio(n, m);
        std::string units;
        for (const auto& u : aug.units) units += to_string(u);
        s.record(5, tag + "-augmented", "with 4m extra pebbles the grid is solvable with ratio (5m+1)(2n+1)/(3(n+1)(m+1)+4m)",
                 Provenance::published, "solvable, " + str(expect_aug),
                 std::string(solvable ? "solvable" : "not solvable") + ", " + str(acov.ratio) + ", units " + units,
                 solvable && acov.ratio == expect_aug && aug.augmented.size() == base.size() + 4 * m, since(t1));

        if (n == 1 && m == 1) {
          t1 = Clock::now();
          bool all = true;
          for (int c = 0; c < g.width(); ++c) all = all && can_move_k(aug.augmented, {c, 5}, 4, s.options());
          s.record(5, tag + "-four-on-row-5", "the augmented instance moves 4 pebbles to any vertex of row 5",
                   Provenance::published, "true", str(all), all, since(t1));
        }

        if (n == 2 && m == 2) {
          t1 = Clock::now();
          std::vector<Rational> ratios, ceilings;
          Distribution step = base;
          ratios.push_back(ratio_of(aug.coverage[0], step.size()));
          ceilings.push_back(covering_ratio_ceiling(step));
          for (std::size_t b = 0; b + 1 < aug.units.size(); b += 2) {
            step.set(aug.units[b], 2);
            step.set(aug.units[b + 1], 2);
            ratios.push_back(ratio_of(aug.coverage[b / 2 + 1], step.size()));
            ceilings.push_back(covering_ratio_ceiling(step));
          }
          bool up = true, down = true;
          for (std::size_t i = 1; i < ratios.size(); ++i) {
            up = up && ratios[i] > ratios[i - 1];
            down = down && ceilings[i] < ceilings[i - 1];
          }
          s.record(9, tag + "-augmentation-ratio", "covering ratio strictly increases band by band",
                   Provenance::published, "strictly increasing", join(ratios), up, since(t1));
          s.record(9, tag + "-augmentation-ceiling", "covering ratio ceiling strictly decreases band by band",
                   Provenance::published, "strictly decreasing", join(ceilings), down, 0);
        }
      });
      const double secs = since(t0);
      s.record(5, tag + "-runtime", "instance finishes within 60 s", Provenance::derived, "< 60 s",
               std::to_string(secs) + " s", secs < 60.0, secs);
    }
}

// -- 6 --------------------------------------------------------------------------------------

void diagonal(Suite& s) {
  std::vector<int> sides{14};
  if (s.full()) sides.push_back(28);
  for (int side : sides) {
    const std::string tag = "diag7-torus-" + std::to_string(side);
    const Count units = static_cast<Count>(side) * side / 14;
    s.guarded(6, tag, "units of 4 on every other vertex of every 7th diagonal give ratio 7/2",
              side == 14 ? Provenance::published : Provenance::derived, "", [&] {
                const auto t0 = Clock::now();
                const Distribution d = gen_diag7(GridSpec(side, side, Topology::torus), s.options());
                const auto cov = s.cover(d, tag);
                const double secs = since(t0);
                const bool ok = d.size() == 4 * units && cov.cov == d.grid().vertex_count() && cov.ratio == Rational(7, 2);
                s.record(6, tag, "units of 4 on every other vertex of every 7th diagonal give ratio 7/2",
                         side == 14 ? Provenance::published : Provenance::derived,
                         str(static_cast<long long>(4 * units)) + " pebbles, solvable, ratio 7/2",
                         str(static_cast<long long>(d.size())) + " pebbles, " +
                             (cov.cov == d.grid().vertex_count() ? "solvable" : "not solvable") + ", ratio " + str(cov.ratio),
                         ok, secs);
                s.record(6, tag + "-runtime", "finishes within 5 minutes at the default budget", Provenance::derived,
                         "< 300 s", std::to_string(secs) + " s", secs < 300.0, secs);
              });
  }
  s.guarded(6, "diag7-period-mismatch", "a 13x13 torus does not fit the period and is rejected", Provenance::trivial,
            "InputError", [&] {
              const auto t0 = Clock::now();
              std::string got = "accepted";
              try {
                (void)gen_diag7(GridSpec(13, 13, Topology::torus), s.options());
              } catch (const InputError&) {
                got = "InputError";
              }
              s.record(6, "diag7-period-mismatch", "a 13x13 torus does not fit the period and is rejected",
                       Provenance::trivial, "InputError", got, got == "InputError", since(t0));
            });
}

// -- 7 --------------------------------------------------------------------------------------

Rational torus_weight_sum(int w, int h) {
  const GridSpec g(w, h, Topology::torus);
  Rational sum = 0;
  for (const auto& v : g.vertices()) sum += pow2_inv(distance(g, {0, 0}, v));
  return sum;
}

void fractional(Suite& s) {
  const int max_side = 9;
  for (int side = 2; side <= max_side; ++side) {
    const std::string id = "fractional-optimum-torus-" + std::to_string(side);
    const Rational oracle = Rational(side * side) / torus_weight_sum(side, side);
    s.guarded(7, id, "fractional optimum on the torus equals the uniform value n^2/S and its witness is fractionally solvable",
              Provenance::derived, str(oracle), [&] {
                const auto t0 = Clock::now();
                const auto opt = fractional_optimal_pebbling(GridSpec(side, side, Topology::torus));
                const bool solv = fractional_solvable(opt.witness);
                const bool cert = verify_certificate(fractional_pebbling_problem(GridSpec(side, side, Topology::torus)),
                                                      opt.lp.primal, opt.lp.dual);
                s.record(7, id,
                         "fractional optimum on the torus equals the uniform value n^2/S and its witness is fractionally solvable",
                         Provenance::derived, str(oracle) + ", witness solvable, certificate ok",
                         str(opt.value) + (solv ? ", witness solvable" : ", witness NOT solvable") +
                             (cert ? ", certificate ok" : ", certificate FAILED"),
                         solv && cert && opt.value == oracle, since(t0));
              });
  }
  const int uni_max = s.full() ? 14 : 9;
  for (int side = 5; side <= uni_max; ++side) {
    const std::string id = "uniform-ninth-torus-" + std::to_string(side);
    s.guarded(7, id, "1/9 pebble on every vertex is fractionally solvable", Provenance::published, "true", [&] {
      const auto t0 = Clock::now();
      const auto d = gen_uniform_frac(GridSpec(side, side, Topology::torus), Rational(1, 9));
      const bool ok = fractional_solvable(d);
      s.record(7, id, "1/9 pebble on every vertex is fractionally solvable", Provenance::published, "true",
               str(ok) + " (constant weight " + str(weight(d, {0, 0})) + ")", ok, since(t0));
    });
  }
  s.guarded(7, "uniform-tenth-torus-15", "1/10 pebble per vertex falls short of weight 1", Provenance::derived, "false",
            [&] {
              const auto t0 = Clock::now();
              const bool ok = fractional_solvable(gen_uniform_frac(GridSpec(15, 15, Topology::torus), Rational(1, 10)));
              s.record(7, "uniform-tenth-torus-15", "1/10 pebble per vertex falls short of weight 1", Provenance::derived,
                       "false", str(ok), !ok, since(t0));
            });

  if (s.full())
    s.guarded(7, "density7-torus-7", "on the 7x7 torus wrap-around is too short for any index-7 lattice",
              Provenance::derived, "no basis reaches weight 1", [&] {
                const auto t0 = Clock::now();
                std::string got;
                try {
                  const auto p = find_density7_pattern(7);
                  got = "found, min weight " + str(p.min_weight);
                } catch (const std::runtime_error&) {
                  got = "no basis reaches weight 1";
                }
                s.record(7, "density7-torus-7", "on the 7x7 torus wrap-around is too short for any index-7 lattice",
                         Provenance::derived, "no basis reaches weight 1", got, got == "no basis reaches weight 1",
                         since(t0));
              });
  std::vector<int> sides{14};
  if (s.full()) sides.push_back(21);
  for (int side : sides) {
    const std::string tag = "density7-torus-" + std::to_string(side);
    s.guarded(7, tag, "an index-7 lattice pattern has weight at least 1 everywhere", Provenance::published, "", [&] {
      const auto t0 = Clock::now();
      const Density7Pattern p = find_density7_pattern(side);
      const auto secs = since(t0);
      const Rational density = ratio_of(static_cast<std::size_t>(p.distribution.size()), static_cast<Count>(side) * side);
      std::string basis = "(" + std::to_string(p.basis[0][0]) + "," + std::to_string(p.basis[0][1]) + "),(" +
                          std::to_string(p.basis[1][0]) + "," + std::to_string(p.basis[1][1]) + ")";
      s.record(7, tag + "-min-weight", "an index-7 lattice pattern has weight at least 1 everywhere",
               Provenance::published, ">= 1", str(p.min_weight) + " with basis " + basis, p.min_weight >= 1, secs);
      s.record(7, tag + "-density", "the pattern uses one pebble per 7 vertices", Provenance::published, "1/7",
               str(density), density == Rational(1, 7), 0);
      if (side != 14) return;
      bool exact = false, above = false;
      std::string cores;
      for (const auto& c : p.classes) {
        const bool lattice_point = !c.shells.empty() && c.shells[0] > 0;
        cores += to_string(c.representative) + ":" + str(c.core_weight) + "@" + std::to_string(c.core_radius) + " ";
        if (!lattice_point && c.core_weight == 1) exact = true;
        if (!lattice_point && c.core_weight == Rational(17, 16) && c.core_radius == 4) above = true;
      }
      s.record(7, tag + "-class-exactly-one", "a vertex class off the lattice sums to exactly 2/4+3/8+1/16+2/32 = 1",
               Provenance::published, "some class with core weight 1/1", cores, exact, 0);
      s.record(7, tag + "-class-above-one", "a vertex class sums to 1/2+1/4+1/8+3/16 = 17/16 by radius 4",
               Provenance::published, "some class with core weight 17/16 at radius 4", cores, above, 0);
    });
  }
}

// -- 8 --------------------------------------------------------------------------------------

void rows(Suite& s) {
  const Rational threshold(17, 4);
  s.guarded(8, "row-ones-marginal", "a unit of 2 at the end of k ones has marginal covering ratio growing with k",
            Provenance::published, "", [&] {
              const auto t0 = Clock::now();
              std::vector<int> ks{4, 8, 16};
              if (s.full()) ks.push_back(32);
              std::vector<Rational> r;
              for (int k : ks) {
                const GridSpec g = row_ones_grid(k);
                const Distribution d = gen_row_ones(g, k, false);
                const Distribution dp = gen_row_ones(g, k, true);
                const auto cov = s.cover(dp, "row-ones-" + std::to_string(k));
                require_border_margin(cov, g, 2);
                r.push_back(marginal_covering_ratio(d, dp, s.options()));
              }
              bool inc = true;
              for (std::size_t i = 1; i < r.size(); ++i) inc = inc && r[i] > r[i - 1];
              s.record(8, "row-ones-marginal-increasing", "marginal covering ratio strictly increases for k = 4, 8, 16",
                       Provenance::published, "strictly increasing", join(r), inc, since(t0));
              s.record(8, "row-ones-marginal-exceeds", "marginal covering ratio exceeds 4.25 by k = 16",
                       Provenance::published, "> 17/4", str(r[2]), r[2] > threshold, 0);
            });
  s.guarded(8, "row-ones-threshold", "smallest k whose marginal ratio exceeds 17/4", Provenance::derived, "2", [&] {
    const auto t0 = Clock::now();
    int first = -1;
    std::vector<Rational> r;
    for (int k = 1; k <= 16; ++k) {
      const GridSpec g = row_ones_grid(k);
      r.push_back(marginal_covering_ratio(gen_row_ones(g, k, false), gen_row_ones(g, k, true), s.options()));
      if (first < 0 && r.back() > threshold) first = k;
    }
    bool formula = true;
    for (int k = 1; k <= 16; ++k) formula = formula && r[static_cast<std::size_t>(k - 1)] == Rational(2 * k + 5, 2);
    s.record(8, "row-ones-threshold", "smallest k whose marginal ratio exceeds 17/4", Provenance::derived, "2",
             std::to_string(first), first == 2, since(t0));
    s.record(8, "row-ones-closed-form", "marginal covering ratio equals (2k+5)/2 for k = 1..16", Provenance::derived,
             "(2k+5)/2", formula ? "matches" : join(r), formula, 0);
  });
  s.guarded(8, "cascade-ones", "adding one pebble completes a cascade; gain grows with k", Provenance::derived, "", [&] {
    const auto t0 = Clock::now();
    std::vector<Rational> r;
    bool lonely = true;
    for (int k = 1; k <= 6; ++k) {
      const Extension e = gen_cascade_ones(cascade_ones_grid(k), k);
      const auto cov = s.cover(e.combined(), "cascade-ones-" + std::to_string(k));
      require_border_margin(cov, e.base.grid(), 2);
      r.push_back(marginal_covering_ratio(e.base, e.combined(), s.options()));
      lonely = lonely && coverage(e.added, s.options()).cov == 1;
    }
    bool inc = true;
    for (std::size_t i = 1; i < r.size(); ++i) inc = inc && r[i] > r[i - 1];
    s.record(8, "cascade-ones-increasing", "marginal covering ratio of the added pebble strictly increases in k",
             Provenance::derived, "strictly increasing", join(r), inc, since(t0));
    s.record(8, "cascade-ones-single", "the added pebble alone covers one vertex", Provenance::trivial, "1",
             lonely ? "1" : "other", lonely, 0);
  });
}

// -- 10 -------------------------------------------------------------------------------------

void optimal(Suite& s) {
  const int max_n = 4;
  const Count expected[] = {0, 1, 3, 4, 7};
  const Provenance prov[] = {Provenance::trivial, Provenance::trivial, Provenance::derived, Provenance::derived,
                             Provenance::derived};
  s.guarded(10, "optimal-series", "exact optimal pebbling numbers of small square grids", Provenance::derived, "", [&] {
    OptimalOptions oo;
    oo.search = s.options();
    auto t0 = Clock::now();
    optimal_ratio_series(max_n, oo, [&](const SeriesEntry& e) {
      const std::string tag = "pi-opt-" + std::to_string(e.n) + "x" + std::to_string(e.n);
      s.record(10, tag, "optimal pebbling number by exhaustive search", prov[e.n], std::to_string(expected[e.n]),
               std::to_string(e.pi_opt), e.pi_opt == expected[e.n], since(t0));
      const bool upper = !e.composed_bound || e.pi_opt <= *e.composed_bound;
      const bool lower = Rational(static_cast<long>(e.pi_opt)) >= e.fractional_bound;
      s.record(10, tag + "-bounds", "between the fractional optimum and the block-composition bound",
               Provenance::trivial,
               str(e.fractional_bound) + " <= pi <= " + (e.composed_bound ? std::to_string(*e.composed_bound) : "n^2"),
               std::to_string(e.pi_opt), upper && lower, 0);
      s.record(10, tag + "-witness", "witness is solvable and has pi_opt pebbles", Provenance::trivial, "true",
               str(e.witness.size() == e.pi_opt && is_solvable(e.witness, s.options())),
               e.witness.size() == e.pi_opt && is_solvable(e.witness, s.options()), 0);
      t0 = Clock::now();
    });
  });
}

// -- 11 -------------------------------------------------------------------------------------

Distribution random_distribution(std::mt19937& rng, const GridSpec& g, int max_units, int max_count) {
  Distribution d(g);
  std::uniform_int_distribution<std::size_t> pick(0, g.vertex_count() - 1);
  std::uniform_int_distribution<int> units(1, max_units), count(1, max_count);
  const int u = units(rng);
  for (int i = 0; i < u; ++i) d.add(g.vertex(pick(rng)), count(rng));
  return d;
}

GridSpec random_grid(std::mt19937& rng) {
  std::uniform_int_distribution<int> side(1, 7);
  return GridSpec(side(rng), side(rng), rng() % 3 == 0 ? Topology::torus : Topology::plane);
}

void enumerate_multisets(std::size_t n, int size, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> picks;
  std::function<void(int, std::size_t)> rec = [&](int left, std::size_t from) {
    if (left == 0) {
      f(picks);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      picks.push_back(i);
      rec(left - 1, i);
      picks.pop_back();
    }
  };
  rec(size, 0);
}

void properties(Suite& s) {
  std::mt19937 rng(20240611);
  s.guarded(11, "weight-linearity", "W of a sum is the sum of the Ws", Provenance::trivial, "", [&] {
    const auto t0 = Clock::now();
    int bad = 0, cases = 0;
    for (int i = 0; i < 200; ++i) {
      const GridSpec g = random_grid(rng);
      const Distribution a = random_distribution(rng, g, 4, 5), b = random_distribution(rng, g, 4, 5);
      const Distribution sum = a + b;
      for (const auto& v : g.vertices()) {
        ++cases;
        if (weight(sum, v) != weight(a, v) + weight(b, v)) ++bad;
      }
    }
    s.record(11, "weight-linearity", "W of a sum is the sum of the Ws", Provenance::trivial, "0 mismatches",
             std::to_string(bad) + " mismatches in " + std::to_string(cases), bad == 0, since(t0));
  });
  s.guarded(11, "move-weight-monotone", "a pebbling move never raises W anywhere", Provenance::trivial, "", [&] {
    const auto t0 = Clock::now();
    int bad = 0, moves = 0;
    for (int i = 0; i < 200; ++i) {
      const GridSpec g = random_grid(rng);
      Distribution d = random_distribution(rng, g, 4, 6);
      for (int step = 0; step < 8; ++step) {
        std::vector<std::pair<Vertex, Vertex>> legal;
        for (const auto& [v, c] : d.entries())
          if (c >= 2)
            for (const auto& u : g.neighbors(v)) legal.push_back({v, u});
        if (legal.empty()) break;
        const auto [from, to] = legal[rng() % legal.size()];
        const Distribution next = apply_move(d, from, to);
        const auto before = weight_field(d), after = weight_field(next);
        ++moves;
        for (std::size_t k = 0; k < before.size(); ++k)
          if (after[k] > before[k]) ++bad;
        d = next;
      }
    }
    s.record(11, "move-weight-monotone", "a pebbling move never raises W anywhere", Provenance::trivial,
             "0 increases", std::to_string(bad) + " increases over " + std::to_string(moves) + " moves", bad == 0,
             since(t0));
  });

  struct Exhaustive {
    GridSpec grid;
    int max_size;
  };
  std::vector<Exhaustive> sweeps{{GridSpec(3, 3), 5}, {GridSpec(3, 3, Topology::torus), 5}};
  if (s.full()) sweeps.push_back({GridSpec(4, 4), 6});
  for (const auto& sw : sweeps) {
    const std::string id = "engine-vs-enumeration-" + std::to_string(sw.grid.width()) + "x" +
                           std::to_string(sw.grid.height()) + "-" + std::string(to_string(sw.grid.topology()));
    s.guarded(11, id, "engine agrees with brute-force state enumeration on every distribution of size <= bound",
              Provenance::trivial, "", [&] {
                const auto t0 = Clock::now();
                long dists = 0, bad = 0;
                SearchOptions forward = s.options();
                forward.strategy = SearchStrategy::forward;
                for (int size = 1; size <= sw.max_size; ++size)
                  enumerate_multisets(sw.grid.vertex_count(), size, [&](const std::vector<std::size_t>& picks) {
                    Distribution d(sw.grid);
                    for (std::size_t p : picks) d.add(sw.grid.vertex(p), 1);
                    ++dists;
                    const auto truth = enumerate_reachable(d);
                    if (coverage(d, s.options()).reachable != truth) ++bad;
                    if (coverage(d, forward).reachable != truth) ++bad;
                    for (const auto& t : sw.grid.vertices()) {
                      const Count best = enumerate_max_on(d, t);
                      if (best >= 1 && !can_move_k(d, t, best, s.options())) ++bad;
                      if (can_move_k(d, t, best + 1, s.options())) ++bad;
                    }
                  });
                s.record(11, id, "engine agrees with brute-force state enumeration on every distribution of size <= bound",
                         Provenance::trivial, "0 disagreements",
                         std::to_string(bad) + " disagreements over " + std::to_string(dists) + " distributions", bad == 0,
                         since(t0));
              });
  }

  const auto t0 = Clock::now();
  std::string worst;
  bool ok = !s.instances().empty();
  for (const auto& inst : s.instances())
    if (inst.ratio > inst.ceiling) {
      ok = false;
      worst += inst.label + " ";
    }
  s.record(11, "ceiling-bounds-ratio", "covering ratio never exceeds the ceiling on any instance computed above",
           Provenance::trivial, "ratio <= ceiling on all",
           worst.empty() ? std::to_string(s.instances().size()) + " instances ok" : "violations: " + worst, ok, since(t0));
}

}  // namespace

VerificationReport run_verification(Scale scale, const SearchOptions& options,
                                    const std::function<void(const Check&)>& on_check) {
  const auto t0 = Clock::now();
  Suite s(scale, options, on_check);
  unit_fixtures(s);
  ceiling_fixtures(s);
  unit_excess_lp(s);
  single_pebble_total(s);
  stripes(s);
  diagonal(s);
  fractional(s);
  rows(s);
  optimal(s);
  properties(s);
  return s.finish(since(t0));
}

}  // namespace pebblekit
