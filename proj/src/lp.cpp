#include "pebblekit/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include "pebblekit/weight.hpp"

namespace pebblekit {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

void LpProblem::validate() const {
  if (constraints.size() != rhs.size())
    throw InputError("constraint matrix has " + std::to_string(constraints.size()) + " rows but rhs has " +
                     std::to_string(rhs.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i)
    if (constraints[i].size() != objective.size())
      throw InputError("constraint row " + std::to_string(i) + " has " + std::to_string(constraints[i].size()) +
                       " entries, expected " + std::to_string(objective.size()));
  if (!variable_names.empty() && variable_names.size() != objective.size())
    throw InputError("variable name count does not match the objective");
}

namespace {

class Tableau {
 public:
  // Columns: [0, n) structural, [n, n+m) surplus, [n+m, n+m+a) artificial, then rhs.
  explicit Tableau(const LpProblem& p) : n_(p.variables()), m_(p.rows()) {
    sign_.assign(m_, 1);
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m_; ++i)
      if (p.rhs[i] < 0) sign_[i] = -1;
      else needs_artificial.push_back(i);
    art_ = needs_artificial.size();
    cols_ = n_ + m_ + art_;
    rows_.assign(m_, std::vector<Rational>(cols_ + 1));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign_[i] * p.constraints[i][j];
      row[n_ + i] = -sign_[i];
      row[cols_] = sign_[i] * p.rhs[i];
      if (sign_[i] < 0) basis_[i] = n_ + i;
    }
    for (std::size_t k = 0; k < art_; ++k) {
      const std::size_t i = needs_artificial[k];
      rows_[i][n_ + m_ + k] = 1;
      basis_[i] = n_ + m_ + k;
    }
  }

  std::size_t structural() const { return n_; }
  std::size_t pivots() const { return pivots_; }
  bool is_artificial(std::size_t j) const { return j >= n_ + m_ && j < cols_; }

  void set_costs(const std::vector<Rational>& cost) {
    cost_ = cost;
    z_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = cost_[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z_[j] -= cb * rows_[r][j];
    }
  }

  enum class Outcome { optimal, unbounded };

  // Bland's rule; `allowed` masks out columns that may not enter.
  Outcome run(const std::vector<bool>& allowed, std::size_t* unbounded_col) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && z_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return Outcome::optimal;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][enter];
        if (a <= 0) continue;
        Rational ratio = rows_[r][cols_] / a;
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == rows_.size()) {
        *unbounded_col = enter;
        return Outcome::unbounded;
      }
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    ++pivots_;
    auto& prow = rows_[r];
    const Rational inv = 1 / prow[e];
    for (auto& v : prow) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][e] == 0) continue;
      const Rational f = rows_[i][e];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) rows_[i][j] -= f * prow[j];
    }
    if (z_[e] != 0) {
      const Rational f = z_[e];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) z_[j] -= f * prow[j];
    }
    basis_[r] = e;
  }

  // After phase 1: move zero-level artificials out of the basis, dropping redundant rows.
  void expel_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (!is_artificial(basis_[r])) {
        ++r;
        continue;
      }
      std::size_t col = cols_;
      for (std::size_t j = 0; j < n_ + m_; ++j)
        if (rows_[r][j] != 0) {
          col = j;
          break;
        }
      if (col == cols_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, col);
      ++r;
    }
  }

  Rational objective() const { return -z_[cols_]; }
  const Rational& reduced_cost(std::size_t j) const { return z_[j]; }
  std::size_t surplus_col(std::size_t i) const { return n_ + i; }
  std::size_t column_count() const { return cols_; }

  std::vector<Rational> basic_solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (basis_[r] < n_) x[basis_[r]] = rows_[r][cols_];
    return x;
  }

  std::vector<Rational> ray(std::size_t enter) const {
    std::vector<Rational> d(n_);
    if (enter < n_) d[enter] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (basis_[r] < n_) d[basis_[r]] = -rows_[r][enter];
    return d;
  }

 private:
  std::size_t n_, m_, art_ = 0, cols_ = 0;
  std::vector<int> sign_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_, z_;
  std::size_t pivots_ = 0;
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

}  // namespace

LpSolution solve(const LpProblem& p) {
  p.validate();
  Tableau t(p);
  const std::size_t n = p.variables(), m = p.rows(), cols = t.column_count();
  LpSolution sol;

  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t j = 0; j < cols; ++j)
    if (t.is_artificial(j)) phase1[j] = 1;
  t.set_costs(phase1);
  std::vector<bool> allowed(cols, true);
  std::size_t col = 0;
  t.run(allowed, &col);  // phase 1 is bounded below by zero
  if (t.objective() > 0) {
    sol.status = LpStatus::infeasible;
    sol.ray.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.ray[i] = t.reduced_cost(t.surplus_col(i));
    sol.pivots = t.pivots();
    return sol;
  }

  t.expel_artificials();
  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = p.objective[j];
  t.set_costs(phase2);
  for (std::size_t j = 0; j < cols; ++j) allowed[j] = !t.is_artificial(j);
  if (t.run(allowed, &col) == Tableau::Outcome::unbounded) {
    sol.status = LpStatus::unbounded;
    sol.ray = t.ray(col);
    sol.pivots = t.pivots();
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.primal = t.basic_solution();
  sol.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = t.reduced_cost(t.surplus_col(i));
  sol.objective_value = dot(p.objective, sol.primal);
  sol.pivots = t.pivots();
  if (!verify_certificate(p, sol.primal, sol.dual))
    throw std::logic_error("simplex produced an optimum that fails its own duality certificate");
  return sol;
}

bool primal_feasible(const LpProblem& p, const std::vector<Rational>& x) {
  if (x.size() != p.variables()) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (dot(p.constraints[i], x) < p.rhs[i]) return false;
  return true;
}

bool dual_feasible(const LpProblem& p, const std::vector<Rational>& y) {
  if (y.size() != p.rows()) return false;
  for (const auto& v : y)
    if (v < 0) return false;
  for (std::size_t j = 0; j < p.variables(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (y[i] != 0) s += p.constraints[i][j] * y[i];
    if (s > p.objective[j]) return false;
  }
  return true;
}

bool verify_certificate(const LpProblem& p, const std::vector<Rational>& primal, const std::vector<Rational>& dual) {
  p.validate();
  return primal_feasible(p, primal) && dual_feasible(p, dual) && dot(p.objective, primal) == dot(p.rhs, dual);
}

bool verify_infeasibility(const LpProblem& p, const std::vector<Rational>& y) {
  p.validate();
  if (y.size() != p.rows()) return false;
  for (const auto& v : y)
    if (v < 0) return false;
  for (std::size_t j = 0; j < p.variables(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) s += p.constraints[i][j] * y[i];
    if (s > 0) return false;
  }
  return dot(p.rhs, y) > 0;
}

bool verify_unbounded_ray(const LpProblem& p, const std::vector<Rational>& d) {
  p.validate();
  if (d.size() != p.variables()) return false;
  for (const auto& v : d)
    if (v < 0) return false;
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (dot(p.constraints[i], d) < 0) return false;
  return dot(p.objective, d) < 0;
}

ExcessRegionProfile ExcessRegionProfile::from_vector(const std::vector<Rational>& v) {
  if (v.size() != 8) throw InputError("region profile needs 8 values");
  ExcessRegionProfile out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (v[i] < 0 || v[i + 4] < 0) throw InputError("region contributions must be non-negative");
    out.x[i] = v[i];
    out.y[i] = v[i + 4];
  }
  return out;
}

std::vector<Rational> ExcessRegionProfile::to_vector() const {
  std::vector<Rational> v(x.begin(), x.end());
  v.insert(v.end(), y.begin(), y.end());
  return v;
}

Rational ExcessRegionProfile::excess_at_unit() const {
  Rational s = 0;
  for (std::size_t i = 0; i < 4; ++i) s += x[i] / 2 + y[i] / 4;
  return s;
}

namespace {

LpProblem excess_problem(const Rational& y1_row_y4) {
  const Rational h(1, 2), q(1, 4), e(1, 8), s(1, 16), one(1);
  LpProblem p;
  p.variable_names = {"x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"};
  p.objective = {h, h, h, h, q, q, q, q};
  // Neighbour rows: the unit itself supplies 1/2, so 1/2 must come from elsewhere.
  p.constraints = {
      {one, q, q, q, h, e, e, h},
      {q, one, q, q, h, h, e, e},
      {q, q, one, q, e, h, h, e},
      {q, q, q, one, e, e, h, h},
      // Diagonal rows: the unit supplies 1/4.
      {h, h, e, e, one, q, s, y1_row_y4},
      {e, h, h, e, q, one, q, s},
      {e, e, h, h, s, q, one, q},
      {h, e, e, h, q, s, q, one},
  };
  p.rhs = {h, h, h, h, Rational(3, 4), Rational(3, 4), Rational(3, 4), Rational(3, 4)};
  return p;
}

}  // namespace

LpProblem unit_excess_problem() { return excess_problem(Rational(1, 4)); }
LpProblem unit_excess_problem_as_printed() { return excess_problem(Rational(1, 8)); }

LpProblem fractional_pebbling_problem(const GridSpec& g) {
  const std::size_t nv = g.vertex_count();
  const auto verts = g.vertices();
  LpProblem p;
  p.objective.assign(nv, Rational(1));
  p.rhs.assign(nv, Rational(1));
  p.constraints.assign(nv, std::vector<Rational>(nv));
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j) p.constraints[i][j] = pow2_inv(distance(g, verts[i], verts[j]));
  p.variable_names.reserve(nv);
  for (const auto& v : verts) p.variable_names.push_back("D" + to_string(v));
  return p;
}

FractionalOptimum fractional_optimal_pebbling(const GridSpec& g, std::size_t max_vertices) {
  const std::size_t nv = g.vertex_count();
  if (nv > max_vertices)
    throw InputError("fractional LP on " + to_string(g) + " exceeds the " + std::to_string(max_vertices) +
                     "-vertex limit");
  const auto verts = g.vertices();
  const LpProblem p = fractional_pebbling_problem(g);

  FractionalOptimum out{Rational(0), ContinuousDistribution(g), solve(p)};
  if (out.lp.status != LpStatus::optimal) throw std::logic_error("fractional pebbling LP has no optimum");
  out.value = out.lp.objective_value;
  for (std::size_t i = 0; i < nv; ++i)
    if (out.lp.primal[i] != 0) out.witness.set(verts[i], out.lp.primal[i]);
  return out;
}

}  // namespace pebblekit
