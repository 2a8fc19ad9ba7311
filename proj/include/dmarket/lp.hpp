#pragma once

// Self-contained dense LP solver producing a primal optimum together with
// the dual multipliers needed to price constraints. Bounded-variable
// two-phase primal simplex with Bland's least-index rule, so runs are
// deterministic and finite. Problem sizes here are tens of variables, hence
// the basis is refactorized densely every iteration.

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmarket::lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MalformedProgram : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Sense { Maximize, Minimize };

struct LinearProgram {
  struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
  };
  struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, double>> terms;  // (variable, coeff)
    double rhs = 0.0;
  };

  Sense sense = Sense::Maximize;
  std::vector<Variable> variables;
  std::vector<Row> equalities;    // a.x  = b
  std::vector<Row> inequalities;  // a.x <= b

  std::size_t add_variable(std::string name, double lower, double upper,
                           double objective) {
    variables.push_back({std::move(name), lower, upper, objective});
    return variables.size() - 1;
  }
  void add_equality(std::string name,
                    std::vector<std::pair<std::size_t, double>> terms,
                    double rhs) {
    equalities.push_back({std::move(name), std::move(terms), rhs});
  }
  void add_inequality(std::string name,
                      std::vector<std::pair<std::size_t, double>> terms,
                      double rhs) {
    inequalities.push_back({std::move(name), std::move(terms), rhs});
  }

  // empty list = well formed
  std::vector<std::string> issues() const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < variables.size(); ++j) {
      const Variable& v = variables[j];
      if (std::isnan(v.lower) || std::isnan(v.upper))
        out.push_back("variable " + v.name + ": NaN bound");
      else if (v.lower > v.upper)
        out.push_back("variable " + v.name + ": lower bound exceeds upper");
      if (!std::isfinite(v.objective))
        out.push_back("variable " + v.name + ": non-finite objective");
    }
    auto check_rows = [&](const std::vector<Row>& rows, const char* kind) {
      for (const Row& r : rows) {
        if (!std::isfinite(r.rhs))
          out.push_back(std::string(kind) + " " + r.name + ": non-finite rhs");
        for (auto [j, a] : r.terms) {
          if (j >= variables.size())
            out.push_back(std::string(kind) + " " + r.name +
                          ": unknown variable index " + std::to_string(j));
          if (!std::isfinite(a))
            out.push_back(std::string(kind) + " " + r.name +
                          ": non-finite coefficient");
        }
      }
    };
    check_rows(equalities, "equality");
    check_rows(inequalities, "inequality");
    return out;
  }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    default: return "unbounded";
  }
}

// Dual sign conventions, stated once:
//   duals_eq[i]    = d(objective)/d(rhs of equality i) in the stated sense.
//   duals_ineq[k]  = Lagrangian multiplier of inequality k, always >= 0.
//                    For a maximization it equals d(objective)/d(rhs);
//                    for a minimization it equals -d(objective)/d(rhs).
//   reduced_costs[j]: zero for basic variables. Maximize: <= 0 at the lower
//                    bound, >= 0 at the upper bound (the bound's shadow
//                    price). Minimize: signs flipped, textbook style.
struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> primal;
  double objective_value = 0.0;
  std::vector<double> duals_eq;
  std::vector<double> duals_ineq;
  std::vector<double> reduced_costs;
  // some basic variable sits on one of its bounds: the duals are one valid
  // selection among several, prices at such solves must not be asserted
  bool degenerate = false;
  std::size_t iterations = 0;
};

struct SolveOptions {
  double dual_tol = 1e-9;      // reduced-cost optimality threshold
  double feas_tol = 1e-9;      // phase-1 residual threshold
  double pivot_tol = 1e-10;    // minimum acceptable pivot magnitude
  double degeneracy_tol = 1e-9;
  std::size_t max_iterations = 200000;
};

namespace detail {

// Dense LU with partial pivoting; solves B x = r and B^T y = r.
class DenseLu {
 public:
  // returns false when the matrix is numerically singular
  bool factor(std::vector<std::vector<double>> a, double pivot_tol) {
    n_ = a.size();
    lu_ = std::move(a);
    perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::fabs(lu_[i][k]) > std::fabs(lu_[p][k])) p = i;
      if (std::fabs(lu_[p][k]) < pivot_tol) return false;
      if (p != k) {
        std::swap(lu_[p], lu_[k]);
        std::swap(perm_[p], perm_[k]);
      }
      const double inv = 1.0 / lu_[k][k];
      for (std::size_t i = k + 1; i < n_; ++i) {
        const double f = lu_[i][k] * inv;
        lu_[i][k] = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n_; ++j) lu_[i][j] -= f * lu_[k][j];
      }
    }
    return true;
  }

  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 1; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu_[i][j] * x[j];
    for (std::size_t i = n_; i-- > 0;) {
      for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_[i][j] * x[j];
      x[i] /= lu_[i][i];
    }
    return x;
  }

  std::vector<double> solve_transposed(const std::vector<double>& rhs) const {
    // solve U^T z = rhs, then L^T w = z, then undo the row permutation
    std::vector<double> z(rhs);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) z[i] -= lu_[j][i] * z[j];
      z[i] /= lu_[i][i];
    }
    for (std::size_t i = n_; i-- > 0;)
      for (std::size_t j = i + 1; j < n_; ++j) z[i] -= lu_[j][i] * z[j];
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[perm_[i]] = z[i];
    return y;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<double>> lu_;
  std::vector<std::size_t> perm_;
};

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Canonical maximization with every row an equality: structural variables,
// one slack per inequality, one artificial per row for phase 1.
struct Canonical {
  std::size_t n_struct = 0, n_slack = 0, m = 0;
  std::vector<std::vector<double>> cols;  // per variable, length m
  std::vector<double> lower, upper, cost;
  std::vector<double> rhs;
  std::vector<std::string> names;
};

inline Canonical canonicalize(const LinearProgram& lp) {
  Canonical c;
  c.n_struct = lp.variables.size();
  c.n_slack = lp.inequalities.size();
  c.m = lp.equalities.size() + lp.inequalities.size();
  const double sign = lp.sense == Sense::Maximize ? 1.0 : -1.0;
  const std::size_t n = c.n_struct + c.n_slack;
  c.cols.assign(n, std::vector<double>(c.m, 0.0));
  c.lower.resize(n);
  c.upper.resize(n);
  c.cost.assign(n, 0.0);
  c.rhs.resize(c.m);
  c.names.resize(n);
  for (std::size_t j = 0; j < c.n_struct; ++j) {
    c.lower[j] = lp.variables[j].lower;
    c.upper[j] = lp.variables[j].upper;
    c.cost[j] = sign * lp.variables[j].objective;
    c.names[j] = lp.variables[j].name;
  }
  for (std::size_t i = 0; i < lp.equalities.size(); ++i) {
    c.rhs[i] = lp.equalities[i].rhs;
    for (auto [j, a] : lp.equalities[i].terms) c.cols[j][i] += a;
  }
  for (std::size_t k = 0; k < lp.inequalities.size(); ++k) {
    const std::size_t i = lp.equalities.size() + k;
    c.rhs[i] = lp.inequalities[k].rhs;
    for (auto [j, a] : lp.inequalities[k].terms) c.cols[j][i] += a;
    const std::size_t s = c.n_struct + k;
    c.cols[s][i] = 1.0;
    c.lower[s] = 0.0;
    c.upper[s] = kInf;
    c.names[s] = "slack:" + lp.inequalities[k].name;
  }
  return c;
}

class Simplex {
 public:
  Simplex(Canonical cn, SolveOptions opt) : c_(std::move(cn)), opt_(opt) {
    n_real_ = c_.cols.size();
    // nonbasic start: nearest finite bound, free variables parked at zero
    state_.assign(n_real_, VarState::AtLower);
    x_.assign(n_real_, 0.0);
    for (std::size_t j = 0; j < n_real_; ++j) {
      if (std::isfinite(c_.lower[j])) {
        state_[j] = VarState::AtLower;
        x_[j] = c_.lower[j];
      } else if (std::isfinite(c_.upper[j])) {
        state_[j] = VarState::AtUpper;
        x_[j] = c_.upper[j];
      } else {
        state_[j] = VarState::FreeZero;
        x_[j] = 0.0;
      }
    }
    // one artificial per row, sized to close the initial residual
    std::vector<double> residual(c_.m);
    for (std::size_t i = 0; i < c_.m; ++i) residual[i] = c_.rhs[i];
    for (std::size_t j = 0; j < n_real_; ++j) {
      if (x_[j] == 0.0) continue;
      for (std::size_t i = 0; i < c_.m; ++i)
        residual[i] -= c_.cols[j][i] * x_[j];
    }
    basis_.resize(c_.m);
    for (std::size_t i = 0; i < c_.m; ++i) {
      std::vector<double> col(c_.m, 0.0);
      col[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
      c_.cols.push_back(std::move(col));
      c_.lower.push_back(0.0);
      c_.upper.push_back(kInf);
      c_.cost.push_back(0.0);
      c_.names.push_back("art:" + std::to_string(i));
      const std::size_t a = n_real_ + i;
      basis_[i] = a;
      state_.push_back(VarState::Basic);
      x_.push_back(std::fabs(residual[i]));
    }
    n_total_ = c_.cols.size();
  }

  // phase 1 result: true when a feasible basis was reached
  bool phase1() {
    std::vector<double> save_cost(c_.cost);
    for (std::size_t j = 0; j < n_total_; ++j) c_.cost[j] = 0.0;
    for (std::size_t i = 0; i < c_.m; ++i) c_.cost[n_real_ + i] = -1.0;
    const bool bounded = iterate();
    if (!bounded)
      throw NumericalBreakdown("phase-1 objective unbounded");
    double infeas = 0.0;
    for (std::size_t i = 0; i < c_.m; ++i)
      if (basis_[i] >= n_real_) infeas += x_[basis_[i]];
    c_.cost = std::move(save_cost);
    if (infeas > opt_.feas_tol * (1.0 + norm_rhs())) return false;
    pin_artificials();
    return true;
  }

  // phase 2 result: false = unbounded
  bool phase2() { return iterate(); }

  const std::vector<double>& values() const { return x_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t iterations() const { return iters_; }

  // y with B^T y = c_B at the terminal basis
  std::vector<double> row_duals() const {
    DenseLu lu;
    if (!lu.factor(basis_matrix(), opt_.pivot_tol))
      throw NumericalBreakdown("terminal basis is singular");
    std::vector<double> cb(c_.m);
    for (std::size_t i = 0; i < c_.m; ++i) cb[i] = c_.cost[basis_[i]];
    return lu.solve_transposed(cb);
  }

  std::vector<double> reduced_costs(const std::vector<double>& y) const {
    std::vector<double> d(n_real_, 0.0);
    for (std::size_t j = 0; j < n_real_; ++j) {
      if (state_[j] == VarState::Basic) continue;
      double v = c_.cost[j];
      for (std::size_t i = 0; i < c_.m; ++i) v -= y[i] * c_.cols[j][i];
      d[j] = v;
    }
    return d;
  }

  bool primal_degenerate() const {
    for (std::size_t i = 0; i < c_.m; ++i) {
      const std::size_t j = basis_[i];
      if (j >= n_real_) continue;
      const double tol = opt_.degeneracy_tol * (1.0 + std::fabs(x_[j]));
      if (std::isfinite(c_.lower[j]) && std::fabs(x_[j] - c_.lower[j]) <= tol)
        return true;
      if (std::isfinite(c_.upper[j]) && std::fabs(x_[j] - c_.upper[j]) <= tol)
        return true;
    }
    return false;
  }

  std::size_t real_count() const { return n_real_; }

 private:
  double norm_rhs() const {
    double s = 0.0;
    for (double b : c_.rhs) s += std::fabs(b);
    return s;
  }

  std::vector<std::vector<double>> basis_matrix() const {
    std::vector<std::vector<double>> b(c_.m, std::vector<double>(c_.m));
    for (std::size_t i = 0; i < c_.m; ++i)
      for (std::size_t k = 0; k < c_.m; ++k) b[i][k] = c_.cols[basis_[k]][i];
    return b;
  }

  void recompute_basics(const DenseLu& lu) {
    std::vector<double> r(c_.rhs);
    for (std::size_t j = 0; j < n_total_; ++j) {
      if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
      for (std::size_t i = 0; i < c_.m; ++i) r[i] -= c_.cols[j][i] * x_[j];
    }
    std::vector<double> xb = lu.solve(r);
    for (std::size_t i = 0; i < c_.m; ++i) x_[basis_[i]] = xb[i];
  }

  // after phase 1: drive zero-level artificials out of the basis where a
  // real pivot exists; a row with no real pivot is redundant and keeps its
  // artificial pinned to zero
  void pin_artificials() {
    for (std::size_t i = 0; i < c_.m; ++i) {
      if (basis_[i] < n_real_) continue;
      DenseLu lu;
      if (!lu.factor(basis_matrix(), opt_.pivot_tol))
        throw NumericalBreakdown("singular basis while removing artificials");
      bool swapped = false;
      for (std::size_t j = 0; j < n_real_ && !swapped; ++j) {
        if (state_[j] == VarState::Basic) continue;
        std::vector<double> dir = lu.solve(c_.cols[j]);
        if (std::fabs(dir[i]) > 1e-7) {
          state_[basis_[i]] = VarState::AtLower;
          x_[basis_[i]] = 0.0;
          basis_[i] = j;
          state_[j] = VarState::Basic;
          DenseLu lu2;
          if (!lu2.factor(basis_matrix(), opt_.pivot_tol))
            throw NumericalBreakdown(
                "singular basis while removing artificials");
          recompute_basics(lu2);
          swapped = true;
        }
      }
    }
    for (std::size_t i = 0; i < c_.m; ++i) {
      const std::size_t a = n_real_ + i;
      if (state_[a] != VarState::Basic) {
        c_.lower[a] = c_.upper[a] = 0.0;
        x_[a] = 0.0;
      }
    }
  }

  // Bland's rule end to end: least eligible entering index, least basic
  // variable index on ratio-test ties. Returns false on unboundedness.
  bool iterate() {
    for (;;) {
      if (++iters_ > opt_.max_iterations)
        throw NumericalBreakdown("iteration limit exceeded");
      DenseLu lu;
      if (!lu.factor(basis_matrix(), opt_.pivot_tol))
        throw NumericalBreakdown("singular basis matrix");
      recompute_basics(lu);
      std::vector<double> cb(c_.m);
      for (std::size_t i = 0; i < c_.m; ++i) cb[i] = c_.cost[basis_[i]];
      std::vector<double> y = lu.solve_transposed(cb);

      std::size_t enter = n_total_;
      int dir = 0;
      for (std::size_t j = 0; j < n_total_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (j >= n_real_) continue;  // artificials never re-enter
        if (c_.lower[j] == c_.upper[j]) continue;  // pinned
        double d = c_.cost[j];
        for (std::size_t i = 0; i < c_.m; ++i) d -= y[i] * c_.cols[j][i];
        if ((state_[j] == VarState::AtLower || state_[j] == VarState::FreeZero)
            && d > opt_.dual_tol) {
          enter = j;
          dir = +1;
          break;
        }
        if ((state_[j] == VarState::AtUpper || state_[j] == VarState::FreeZero)
            && d < -opt_.dual_tol) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == n_total_) return true;  // optimal for this phase

      std::vector<double> w = lu.solve(c_.cols[enter]);  // B^-1 a_e

      // entering variable's own range is one ratio-test candidate
      double best = kInf;
      std::size_t leave_row = static_cast<std::size_t>(-1);
      bool flip = false;
      const double range = c_.upper[enter] - c_.lower[enter];
      if (std::isfinite(range)) {
        best = range;
        flip = true;
      }
      for (std::size_t i = 0; i < c_.m; ++i) {
        const std::size_t bj = basis_[i];
        const double rate = -static_cast<double>(dir) * w[i];
        double room = kInf;
        if (rate > opt_.pivot_tol)
          room = std::isfinite(c_.upper[bj]) ? (c_.upper[bj] - x_[bj]) / rate
                                             : kInf;
        else if (rate < -opt_.pivot_tol)
          room = std::isfinite(c_.lower[bj]) ? (x_[bj] - c_.lower[bj]) / -rate
                                             : kInf;
        else
          continue;
        if (room < 0.0) room = 0.0;  // numerical drift guard
        if (room < best - 1e-13 ||
            (room < best + 1e-13 &&
             (leave_row == static_cast<std::size_t>(-1) ||
              bj < basis_[leave_row]))) {
          if (room < best) best = room;
          leave_row = i;
          flip = false;
        }
      }
      if (!std::isfinite(best)) return false;  // unbounded ray

      const double step = best * dir;
      for (std::size_t i = 0; i < c_.m; ++i) x_[basis_[i]] -= w[i] * step;
      x_[enter] += step;

      if (flip) {
        state_[enter] =
            dir > 0 ? VarState::AtUpper : VarState::AtLower;
        x_[enter] = dir > 0 ? c_.upper[enter] : c_.lower[enter];
        continue;
      }
      const std::size_t out = basis_[leave_row];
      const double rate = -static_cast<double>(dir) * w[leave_row];
      if (rate > 0.0) {
        state_[out] = VarState::AtUpper;
        x_[out] = c_.upper[out];
      } else {
        state_[out] = VarState::AtLower;
        x_[out] = c_.lower[out];
      }
      basis_[leave_row] = enter;
      state_[enter] = VarState::Basic;
    }
  }

  Canonical c_;
  SolveOptions opt_;
  std::size_t n_real_ = 0, n_total_ = 0;
  std::vector<std::size_t> basis_;
  std::vector<VarState> state_;
  std::vector<double> x_;
  std::size_t iters_ = 0;
};

}  // namespace detail

// Deterministic solve: identical input yields identical output.
inline LpSolution solve(const LinearProgram& lp, SolveOptions opt = {}) {
  if (auto bad = lp.issues(); !bad.empty()) {
    std::string msg = "malformed program:";
    for (const std::string& s : bad) msg += " [" + s + "]";
    throw MalformedProgram(msg);
  }

  detail::Canonical cn = detail::canonicalize(lp);
  const std::size_t n_struct = cn.n_struct;
  const std::size_t n_eq = lp.equalities.size();
  const std::size_t n_ineq = lp.inequalities.size();
  const double sign = lp.sense == Sense::Maximize ? 1.0 : -1.0;

  detail::Simplex splx(std::move(cn), opt);
  LpSolution sol;
  if (!splx.phase1()) {
    sol.status = SolveStatus::Infeasible;
    sol.iterations = splx.iterations();
    return sol;
  }
  if (!splx.phase2()) {
    sol.status = SolveStatus::Unbounded;
    sol.iterations = splx.iterations();
    return sol;
  }

  sol.status = SolveStatus::Optimal;
  sol.iterations = splx.iterations();
  sol.primal.assign(splx.values().begin(), splx.values().begin() + n_struct);

  double obj = 0.0;
  for (std::size_t j = 0; j < n_struct; ++j)
    obj += lp.variables[j].objective * sol.primal[j];
  sol.objective_value = obj;

  const std::vector<double> y = splx.row_duals();
  const std::vector<double> d = splx.reduced_costs(y);
  sol.duals_eq.resize(n_eq);
  for (std::size_t i = 0; i < n_eq; ++i) sol.duals_eq[i] = sign * y[i];
  sol.duals_ineq.resize(n_ineq);
  for (std::size_t k = 0; k < n_ineq; ++k) {
    double z = y[n_eq + k];  // >= 0 at a canonical-max optimum
    if (z < 0.0 && z > -1e-11) z = 0.0;
    sol.duals_ineq[k] = z;
  }
  sol.reduced_costs.resize(n_struct);
  for (std::size_t j = 0; j < n_struct; ++j)
    sol.reduced_costs[j] = sign * d[j];
  sol.degenerate = splx.primal_degenerate();
  return sol;
}

// Max residual per KKT block, recomputed from the program and the reported
// solution alone.
struct KktReport {
  double feasibility = 0.0;     // constraint and bound violations
  double stationarity = 0.0;    // gradient vs weighted constraint normals
  double complementarity = 0.0; // multiplier x slack
  double duality_gap = 0.0;     // |primal - dual| / (1 + |primal|)
  double tolerance = 1e-7;
  double worst() const {
    return std::max(std::max(feasibility, stationarity),
                    std::max(complementarity, duality_gap));
  }
  bool pass() const { return worst() <= tolerance; }
};

inline KktReport check_kkt(const LinearProgram& lp, const LpSolution& sol,
                           double tol = 1e-7) {
  if (sol.status != SolveStatus::Optimal)
    throw std::invalid_argument("check_kkt requires an Optimal solution");
  KktReport rep;
  rep.tolerance = tol;
  const double sign = lp.sense == Sense::Maximize ? 1.0 : -1.0;
  const std::size_t n = lp.variables.size();

  auto row_value = [&](const LinearProgram::Row& r) {
    double v = 0.0;
    for (auto [j, a] : r.terms) v += a * sol.primal[j];
    return v;
  };

  // primal feasibility
  for (const auto& r : lp.equalities)
    rep.feasibility = std::max(rep.feasibility,
                               std::fabs(row_value(r) - r.rhs));
  for (const auto& r : lp.inequalities)
    rep.feasibility = std::max(rep.feasibility, row_value(r) - r.rhs);
  for (std::size_t j = 0; j < n; ++j) {
    rep.feasibility =
        std::max(rep.feasibility, lp.variables[j].lower - sol.primal[j]);
    rep.feasibility =
        std::max(rep.feasibility, sol.primal[j] - lp.variables[j].upper);
  }

  // canonical-max multipliers
  std::vector<double> y(sol.duals_eq);
  for (double& v : y) v *= sign;
  const std::vector<double>& z = sol.duals_ineq;
  std::vector<double> d(sol.reduced_costs);
  for (double& v : d) v *= sign;

  // stationarity: c - A^T y - G^T z - d = 0 in the canonical max form
  std::vector<double> grad(n);
  for (std::size_t j = 0; j < n; ++j)
    grad[j] = sign * lp.variables[j].objective;
  for (std::size_t i = 0; i < lp.equalities.size(); ++i)
    for (auto [j, a] : lp.equalities[i].terms) grad[j] -= a * y[i];
  for (std::size_t k = 0; k < lp.inequalities.size(); ++k)
    for (auto [j, a] : lp.inequalities[k].terms) grad[j] -= a * z[k];
  for (std::size_t j = 0; j < n; ++j)
    rep.stationarity = std::max(rep.stationarity, std::fabs(grad[j] - d[j]));

  // multiplier sign and complementary slackness
  for (std::size_t k = 0; k < lp.inequalities.size(); ++k) {
    rep.feasibility = std::max(rep.feasibility, -z[k]);
    const double slack = lp.inequalities[k].rhs - row_value(lp.inequalities[k]);
    rep.complementarity =
        std::max(rep.complementarity, std::fabs(z[k] * slack));
  }
  for (std::size_t j = 0; j < n; ++j) {
    // canonical max: d > 0 prices the upper bound, d < 0 the lower bound
    if (d[j] > 0.0) {
      if (std::isfinite(lp.variables[j].upper))
        rep.complementarity =
            std::max(rep.complementarity,
                     std::fabs(d[j] * (lp.variables[j].upper - sol.primal[j])));
      else
        rep.complementarity = std::max(rep.complementarity, d[j]);
    } else if (d[j] < 0.0) {
      if (std::isfinite(lp.variables[j].lower))
        rep.complementarity =
            std::max(rep.complementarity,
                     std::fabs(d[j] * (sol.primal[j] - lp.variables[j].lower)));
      else
        rep.complementarity = std::max(rep.complementarity, -d[j]);
    }
  }

  // strong duality in the canonical form
  double primal_obj = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    primal_obj += sign * lp.variables[j].objective * sol.primal[j];
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < lp.equalities.size(); ++i)
    dual_obj += y[i] * lp.equalities[i].rhs;
  for (std::size_t k = 0; k < lp.inequalities.size(); ++k)
    dual_obj += z[k] * lp.inequalities[k].rhs;
  for (std::size_t j = 0; j < n; ++j) {
    if (d[j] > 0.0 && std::isfinite(lp.variables[j].upper))
      dual_obj += d[j] * lp.variables[j].upper;
    else if (d[j] < 0.0 && std::isfinite(lp.variables[j].lower))
      dual_obj += d[j] * lp.variables[j].lower;
  }
  rep.duality_gap =
      std::fabs(primal_obj - dual_obj) / (1.0 + std::fabs(primal_obj));
  return rep;
}

// Human-readable dump, one constraint per line, terms sorted by variable
// name; ordering is stable so the output can be used in golden tests.
inline std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(12);
  os << (lp.sense == Sense::Maximize ? "maximize" : "minimize") << "\n";
  auto term_list = [&](const std::vector<std::pair<std::size_t, double>>& terms) {
    std::map<std::string, double> sorted;
    for (auto [j, a] : terms) sorted[lp.variables[j].name] += a;
    std::string out;
    for (auto& [name, a] : sorted) {
      if (out.empty())
        out += a < 0 ? "- " : "";
      else
        out += a < 0 ? " - " : " + ";
      std::ostringstream t;
      t.precision(12);
      t << std::fabs(a);
      out += t.str() + " " + name;
    }
    return out.empty() ? "0" : out;
  };
  {
    std::map<std::string, double> obj;
    for (const auto& v : lp.variables)
      if (v.objective != 0.0) obj[v.name] = v.objective;
    os << "  obj:";
    for (auto& [name, a] : obj)
      os << " " << (a < 0 ? "-" : "+") << " " << std::fabs(a) << " " << name;
    os << "\n";
  }
  for (const auto& r : lp.equalities)
    os << "  " << r.name << ": " << term_list(r.terms) << " = " << r.rhs
       << "\n";
  for (const auto& r : lp.inequalities)
    os << "  " << r.name << ": " << term_list(r.terms) << " <= " << r.rhs
       << "\n";
  os << "bounds\n";
  for (const auto& v : lp.variables) {
    os << "  ";
    if (std::isfinite(v.lower)) os << v.lower << " <= ";
    os << v.name;
    if (std::isfinite(v.upper)) os << " <= " << v.upper;
    os << "\n";
  }
  return os.str();
}

}  // namespace dmarket::lp
