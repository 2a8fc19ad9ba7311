#pragma once

// Hourly market clearing: allocate assigned grid power among responsive
// bids on the radial network so total bid benefit is maximal, then read
// nodal prices off the bus-balance duals. Segment caps and line limits
// enter as variable bounds, so their shadow prices come back as reduced
// costs with no extra rows.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dmarket/domain.hpp"
#include "dmarket/lp.hpp"

namespace dmarket {

struct ClearingInfeasible : std::runtime_error {
  std::size_t hour;
  ClearingInfeasible(std::size_t t, const std::string& what)
      : std::runtime_error(what), hour(t) {}
};

struct ClearingUnbounded : std::runtime_error {
  std::size_t hour;
  ClearingUnbounded(std::size_t t, const std::string& what)
      : std::runtime_error(what), hour(t) {}
};

// One cleared hour. Vectors follow the network's bus/line ordering.
struct HourClearing {
  std::vector<double> dlmp;                      // $/MWh per bus
  std::vector<std::vector<double>> allocations;  // MW per bus, per segment
  std::vector<double> flows;                     // MW per line, parent->child
  std::vector<double> line_shadow;               // $/MWh per line, >= 0
  double grid_power = 0.0;                       // MW drawn at the root
  double welfare = 0.0;                          // objective at the optimum
  bool degenerate_prices = false;                // duals are one valid choice

  double responsive_at(std::size_t bus_index) const {
    double s = 0.0;
    for (double q : allocations[bus_index]) s += q;
    return s;
  }
};

namespace detail {

struct VarLayout {
  std::vector<std::vector<std::size_t>> dx;  // per bus, per segment
  std::vector<std::size_t> pl;               // per line
  std::size_t grid = static_cast<std::size_t>(-1);
};

// Assumes a validated case. Variable order (bids, flows, grid) and row
// order (buses as listed) are fixed so solves are reproducible.
inline std::pair<lp::LinearProgram, VarLayout> clearing_lp_with_layout(
    const MarketCase& cs, std::size_t hour) {
  const RadialNetwork& net = cs.network;
  lp::LinearProgram prog;
  VarLayout lay;
  lay.dx.resize(net.buses.size());

  std::unordered_map<int, std::size_t> bus_pos;
  for (std::size_t i = 0; i < net.buses.size(); ++i)
    bus_pos.emplace(net.buses[i].id, i);

  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    const Bus& b = net.buses[i];
    if (b.is_root || !b.bid) continue;
    const auto& segs = b.bid->segments(hour);
    for (std::size_t g = 0; g < segs.size(); ++g) {
      lay.dx[i].push_back(prog.add_variable(
          "dx:bus" + std::to_string(b.id) + ":s" + std::to_string(g + 1), 0.0,
          segs[g].max_quantity, segs[g].benefit));
    }
  }
  lay.pl.reserve(net.lines.size());
  for (const Line& l : net.lines) {
    const double cap = l.capacity.value_or(lp::kInf);
    lay.pl.push_back(prog.add_variable("flow:line" + std::to_string(l.id),
                                       -cap, cap, 0.0));
  }
  if (cs.mode == ClearingMode::VariablePower)
    lay.grid = prog.add_variable("grid", 0.0, lp::kInf, -cs.tlmp[hour]);

  // power balance per bus: outflow - inflow + local demand = 0, except at
  // the root where outflow equals the grid draw
  std::vector<std::vector<std::pair<std::size_t, double>>> terms(
      net.buses.size());
  for (std::size_t l = 0; l < net.lines.size(); ++l) {
    terms[bus_pos.at(net.lines[l].from_bus)].push_back({lay.pl[l], +1.0});
    terms[bus_pos.at(net.lines[l].to_bus)].push_back({lay.pl[l], -1.0});
  }
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    const Bus& b = net.buses[i];
    auto t = std::move(terms[i]);
    double rhs;
    if (b.is_root) {
      if (cs.mode == ClearingMode::VariablePower) {
        t.push_back({lay.grid, -1.0});
        rhs = 0.0;
      } else {
        rhs = cs.assigned_power[hour];
      }
    } else {
      for (std::size_t v : lay.dx[i]) t.push_back({v, 1.0});
      rhs = -b.fixed_load_at(hour);
    }
    prog.add_equality("balance:bus" + std::to_string(b.id), std::move(t), rhs);
  }
  return {std::move(prog), std::move(lay)};
}

inline HourClearing clear_hour_unchecked(const MarketCase& cs,
                                         std::size_t hour,
                                         const lp::SolveOptions& opt) {
  auto [prog, lay] = clearing_lp_with_layout(cs, hour);
  lp::LpSolution sol = lp::solve(prog, opt);
  if (sol.status == lp::SolveStatus::Infeasible)
    throw ClearingInfeasible(
        hour, "hour " + std::to_string(hour) +
                  ": no feasible dispatch (assigned power, fixed load and "
                  "line limits cannot be reconciled)");
  if (sol.status == lp::SolveStatus::Unbounded)
    throw ClearingUnbounded(
        hour, "hour " + std::to_string(hour) +
                  ": grid purchase is unbounded (negative wholesale price "
                  "with variable assigned power)");

  const RadialNetwork& net = cs.network;
  HourClearing out;
  out.dlmp.resize(net.buses.size());
  for (std::size_t i = 0; i < net.buses.size(); ++i)
    out.dlmp[i] = sol.duals_eq[i];
  out.allocations.resize(net.buses.size());
  for (std::size_t i = 0; i < net.buses.size(); ++i)
    for (std::size_t v : lay.dx[i])
      out.allocations[i].push_back(sol.primal[v]);
  out.flows.resize(net.lines.size());
  out.line_shadow.resize(net.lines.size());
  for (std::size_t l = 0; l < net.lines.size(); ++l) {
    out.flows[l] = sol.primal[lay.pl[l]];
    out.line_shadow[l] = std::fabs(sol.reduced_costs[lay.pl[l]]);
  }
  out.grid_power = cs.mode == ClearingMode::VariablePower
                       ? sol.primal[lay.grid]
                       : cs.assigned_power[hour];
  out.welfare = sol.objective_value;
  out.degenerate_prices = sol.degenerate;
  return out;
}

}  // namespace detail

// The hour's allocation program, for inspection or dumping.
inline lp::LinearProgram build_clearing_lp(const MarketCase& cs,
                                           std::size_t hour) {
  detail::require_valid(cs);
  detail::require_hour(cs, hour);
  return detail::clearing_lp_with_layout(cs, hour).first;
}

// Clears one hour. Throws ClearingInfeasible / ClearingUnbounded for
// market conditions, std::invalid_argument for an invalid case, and lets
// lp::NumericalBreakdown propagate.
inline HourClearing clear_hour(const MarketCase& cs, std::size_t hour,
                               const lp::SolveOptions& opt = {}) {
  detail::require_valid(cs);
  detail::require_hour(cs, hour);
  return detail::clear_hour_unchecked(cs, hour, opt);
}

enum class FailureKind { Infeasible, Unbounded, Numerical };

inline const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::Infeasible: return "infeasible";
    case FailureKind::Unbounded: return "unbounded";
    default: return "numerical";
  }
}

struct HourFailure {
  std::size_t hour = 0;
  FailureKind kind = FailureKind::Infeasible;
  std::string message;
};

struct HorizonClearing {
  std::vector<std::optional<HourClearing>> hours;  // one slot per hour
  std::vector<HourFailure> failures;               // ascending by hour
  bool all_cleared() const { return failures.empty(); }
};

struct ClearOptions {
  lp::SolveOptions lp_options{};
  bool parallel = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Clears every hour of the horizon; hours are independent, so failures do
// not stop the rest. Parallel and serial runs produce identical results.
inline HorizonClearing clear_horizon(const MarketCase& cs,
                                     const ClearOptions& opt = {}) {
  detail::require_valid(cs);
  const std::size_t T = cs.horizon;
  HorizonClearing out;
  out.hours.resize(T);
  std::vector<std::optional<HourFailure>> errs(T);

  // the record carries the hour already; drop the prefix the throw sites add
  auto strip_hour = [](std::size_t t, std::string msg) {
    const std::string prefix = "hour " + std::to_string(t) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    return msg;
  };
  auto run_one = [&](std::size_t t) {
    try {
      out.hours[t] = detail::clear_hour_unchecked(cs, t, opt.lp_options);
    } catch (const ClearingInfeasible& e) {
      errs[t] = HourFailure{t, FailureKind::Infeasible, strip_hour(t, e.what())};
    } catch (const ClearingUnbounded& e) {
      errs[t] = HourFailure{t, FailureKind::Unbounded, strip_hour(t, e.what())};
    } catch (const lp::NumericalBreakdown& e) {
      errs[t] = HourFailure{t, FailureKind::Numerical, e.what()};
    }
  };

  if (opt.parallel && T > 1) {
    unsigned n = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (n > T) n = static_cast<unsigned>(T);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < T; t += n) run_one(t);
      });
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t t = 0; t < T; ++t) run_one(t);
  }
  for (std::size_t t = 0; t < T; ++t)
    if (errs[t]) out.failures.push_back(std::move(*errs[t]));
  return out;
}

struct SweepPoint {
  double assigned_power = 0.0;
  std::vector<double> dlmp;     // empty when infeasible
  double average_dlmp = 0.0;    // mean over non-root buses
  bool degenerate = false;
  bool infeasible = false;
};

// Re-clears one hour across a grid of assigned-power settings. Only
// meaningful in constant-power mode, where assigned power is an input.
inline std::vector<SweepPoint> sweep_assigned_power(
    const MarketCase& cs, std::size_t hour,
    const std::vector<double>& grid_values, const lp::SolveOptions& opt = {}) {
  detail::require_valid(cs);
  detail::require_hour(cs, hour);
  if (cs.mode != ClearingMode::ConstantPower)
    throw std::invalid_argument(
        "sweep requires constant-power mode (assigned power is an input)");
  for (double g : grid_values)
    if (!(g >= 0.0))
      throw std::invalid_argument("sweep points must be >= 0");

  MarketCase probe = cs;
  std::vector<SweepPoint> out;
  out.reserve(grid_values.size());
  for (double g : grid_values) {
    probe.assigned_power[hour] = g;
    SweepPoint p;
    p.assigned_power = g;
    try {
      HourClearing h = detail::clear_hour_unchecked(probe, hour, opt);
      p.dlmp = std::move(h.dlmp);
      p.degenerate = h.degenerate_prices;
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t i = 0; i < cs.network.buses.size(); ++i) {
        if (cs.network.buses[i].is_root) continue;
        sum += p.dlmp[i];
        ++cnt;
      }
      p.average_dlmp = cnt ? sum / double(cnt) : p.dlmp.front();
    } catch (const ClearingInfeasible&) {
      p.infeasible = true;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dmarket
