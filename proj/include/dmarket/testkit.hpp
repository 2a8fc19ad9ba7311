#pragma once

// Test instrumentation: an exhaustive reference optimizer on a quantity
// grid, a finite-difference price probe, and seeded random case
// generators. Lives in the library so every suite draws cases the same
// way; not meant for production paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "dmarket/clearing.hpp"
#include "dmarket/domain.hpp"

namespace dmarket::testkit {

// --- exhaustive reference ----------------------------------------------

struct BruteForceResult {
  bool feasible = false;
  double welfare = 0.0;
  double grid_power = 0.0;
  std::vector<std::vector<double>> allocations;  // per bus, per segment
};

// Enumerates every segment allocation on multiples of `step`, keeps those
// whose totals and line flows are admissible, and returns the best. With
// constant assigned power the total must land exactly on the required
// amount, so quantities and assignments should live on the step lattice.
// Cost is exponential in the segment count, so keep cases small and
// quantities near the step size.
inline BruteForceResult brute_force_clear(const MarketCase& cs,
                                          std::size_t hour, double step) {
  detail::require_valid(cs);
  detail::require_hour(cs, hour);
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  auto ix = NetworkIndex::build(cs.network);

  struct Seg {
    std::size_t bus;
    double benefit;
    std::vector<double> candidates;
  };
  std::vector<Seg> segs;
  const RadialNetwork& net = cs.network;
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    const Bus& b = net.buses[i];
    if (b.is_root || !b.bid) continue;
    for (const BidSegment& s : b.bid->segments(hour)) {
      Seg sg{i, s.benefit, {}};
      const auto k = static_cast<std::size_t>(
          std::floor(s.max_quantity / step + 1e-9));
      for (std::size_t j = 0; j <= k; ++j) sg.candidates.push_back(j * step);
      if (std::fabs(s.max_quantity - double(k) * step) > 1e-12)
        sg.candidates.push_back(s.max_quantity);
      segs.push_back(std::move(sg));
    }
  }

  const bool constant = cs.mode == ClearingMode::ConstantPower;
  double fixed_total = 0.0;
  for (const Bus& b : net.buses) fixed_total += b.fixed_load_at(hour);
  const double target =
      constant ? cs.assigned_power[hour] - fixed_total : 0.0;
  BruteForceResult best;
  if (constant && target < -1e-9) return best;  // load exceeds assignment

  // suffix_max[i] = most quantity segments i.. can still add
  std::vector<double> suffix_max(segs.size() + 1, 0.0);
  for (std::size_t i = segs.size(); i-- > 0;)
    suffix_max[i] = suffix_max[i + 1] + segs[i].candidates.back();

  std::vector<double> take(segs.size(), 0.0);
  std::vector<double> load(net.buses.size());
  std::vector<double> sub(net.buses.size());

  auto admit = [&](double total) {
    // flows are subtree loads; children accumulate into parents
    for (std::size_t i = 0; i < net.buses.size(); ++i)
      load[i] = net.buses[i].fixed_load_at(hour);
    for (std::size_t s = 0; s < segs.size(); ++s) load[segs[s].bus] += take[s];
    sub = load;
    for (std::size_t b : ix->leaves_first()) {
      const std::size_t p = ix->parent_bus(b);
      if (p == NetworkIndex::npos) continue;
      const Line& l = net.lines[ix->parent_line(b)];
      if (l.capacity && sub[b] > *l.capacity + 1e-9) return;
      sub[p] += sub[b];
    }
    double welfare = 0.0;
    for (std::size_t s = 0; s < segs.size(); ++s)
      welfare += segs[s].benefit * take[s];
    const double grid = constant ? cs.assigned_power[hour]
                                 : fixed_total + total;
    if (!constant) welfare -= cs.tlmp[hour] * grid;
    if (!best.feasible || welfare > best.welfare + 1e-15) {
      best.feasible = true;
      best.welfare = welfare;
      best.grid_power = grid;
      best.allocations.assign(net.buses.size(), {});
      for (std::size_t s = 0; s < segs.size(); ++s)
        best.allocations[segs[s].bus].push_back(take[s]);
    }
  };

  const double sum_tol = 1e-9 * (1.0 + std::fabs(target));
  auto walk = [&](auto&& self, std::size_t i, double total) -> void {
    if (constant) {
      if (total > target + sum_tol) return;
      if (total + suffix_max[i] < target - sum_tol) return;
    }
    if (i == segs.size()) {
      if (constant && std::fabs(total - target) > sum_tol) return;
      admit(total);
      return;
    }
    for (double q : segs[i].candidates) {
      take[i] = q;
      self(self, i + 1, total + q);
    }
    take[i] = 0.0;
  };
  walk(walk, 0, 0.0);
  return best;
}

// --- finite-difference price probe -------------------------------------

struct PerturbationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Price at a bus as the welfare lost per extra unit of fixed load there.
// Retries with smaller perturbations when a shifted solve lands on a
// degenerate vertex; gives up after `tries`.
inline double perturbation_price(const MarketCase& cs, std::size_t hour,
                                 int bus_id, double eps0 = 1e-4,
                                 int tries = 3,
                                 const lp::SolveOptions& opt = {}) {
  HourClearing base = clear_hour(cs, hour, opt);
  if (base.degenerate_prices)
    throw PerturbationFailure("degenerate prices at the base point");

  double eps = eps0;
  for (int k = 0; k < tries; ++k, eps /= 10.0) {
    MarketCase probe = cs;
    bool found = false;
    for (Bus& b : probe.network.buses) {
      if (b.id != bus_id) continue;
      if (b.is_root)
        throw std::invalid_argument("cannot perturb load at the root");
      if (b.fixed_load.empty()) b.fixed_load.assign(cs.horizon, 0.0);
      b.fixed_load[hour] += eps;
      found = true;
    }
    if (!found)
      throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
    try {
      HourClearing shifted = detail::clear_hour_unchecked(probe, hour, opt);
      if (shifted.degenerate_prices) continue;
      return (base.welfare - shifted.welfare) / eps;
    } catch (const ClearingInfeasible&) {
      continue;  // a smaller shift may still fit
    }
  }
  throw PerturbationFailure(
      "degenerate or infeasible at every tried perturbation size");
}

// --- random case generation --------------------------------------------

struct CaseShape {
  int min_buses = 2;
  int max_buses = 13;
  int max_segments = 3;
  std::size_t horizon = 1;
  ClearingMode mode = ClearingMode::ConstantPower;
  bool on_grid = false;   // snap all quantities to multiples of `step`
  double step = 0.01;
  double max_segment_quantity = 5.0;
  double max_fixed_load = 2.0;
  bool with_caps = true;  // capacities derived from a feasible witness
  double cap_slack = 0.35;
  bool hourly_bids_sometimes = true;
};

// Random valid case. Line capacities are set above the flows of a random
// feasible allocation, so every generated case clears.
inline MarketCase random_case(std::mt19937& rng, const CaseShape& sh = {}) {
  auto uni = [&](double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  };
  auto pick = [&](int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(rng);
  };
  auto coin = [&](double p) { return uni(0.0, 1.0) < p; };
  auto snap = [&](double v) {
    return sh.on_grid ? std::round(v / sh.step) * sh.step : v;
  };

  MarketCase cs;
  cs.horizon = sh.horizon;
  cs.mode = sh.mode;
  const int n = pick(sh.min_buses, sh.max_buses);
  cs.network.root = 1;
  cs.network.buses.push_back({1, true, {}, std::nullopt});
  for (int i = 2; i <= n; ++i) {
    cs.network.buses.push_back({i, false, {}, std::nullopt});
    cs.network.lines.push_back({1000 + i, pick(1, i - 1), i, std::nullopt});
  }
  for (std::size_t t = 0; t < sh.horizon; ++t)
    cs.tlmp.push_back(uni(10.0, 30.0));

  auto make_segments = [&]() {
    std::vector<BidSegment> segs;
    const int m = pick(1, sh.max_segments);
    double benefit = uni(15.0, 40.0);
    for (int g = 0; g < m; ++g) {
      double q = snap(uni(sh.step, sh.max_segment_quantity));
      if (q < sh.step) q = sh.step;
      segs.push_back({benefit, q});
      if (!coin(0.15)) benefit -= uni(0.5, 8.0);  // ties now and then
      if (benefit < 0.5) benefit = 0.5;
    }
    return segs;
  };

  for (std::size_t i = 1; i < cs.network.buses.size(); ++i) {
    Bus& b = cs.network.buses[i];
    if (coin(0.7)) {
      b.fixed_load.resize(sh.horizon);
      for (std::size_t t = 0; t < sh.horizon; ++t)
        b.fixed_load[t] = snap(uni(0.0, sh.max_fixed_load));
    }
    if (coin(0.75)) {
      if (sh.horizon > 1 && sh.hourly_bids_sometimes && coin(0.25)) {
        std::vector<std::vector<BidSegment>> per_hour;
        for (std::size_t t = 0; t < sh.horizon; ++t)
          per_hour.push_back(make_segments());
        b.bid = BidCurve::hourly(std::move(per_hour));
      } else {
        b.bid = BidCurve::shared(make_segments());
      }
    }
  }

  // witness allocation per hour; drives assigned power and line limits
  std::vector<std::vector<double>> witness_load(
      sh.horizon, std::vector<double>(cs.network.buses.size(), 0.0));
  for (std::size_t t = 0; t < sh.horizon; ++t) {
    for (std::size_t i = 0; i < cs.network.buses.size(); ++i)
      witness_load[t][i] = cs.network.buses[i].fixed_load_at(t);

    struct Slot {
      std::size_t bus;
      double q;
    };
    std::vector<Slot> slots;
    double total_q = 0.0;
    for (std::size_t i = 1; i < cs.network.buses.size(); ++i) {
      const Bus& b = cs.network.buses[i];
      if (!b.bid) continue;
      for (const BidSegment& s : b.bid->segments(t)) {
        slots.push_back({i, s.max_quantity});
        total_q += s.max_quantity;
      }
    }
    if (cs.mode == ClearingMode::ConstantPower) {
      double responsive = uni(0.1, 0.9) * total_q;
      if (sh.on_grid) responsive = std::round(responsive / sh.step) * sh.step;
      if (responsive > total_q) responsive = total_q;
      if (responsive < 0.0) responsive = 0.0;
      std::shuffle(slots.begin(), slots.end(), rng);
      double rem = responsive;
      for (const Slot& s : slots) {
        const double take = std::min(s.q, rem);
        witness_load[t][s.bus] += take;
        rem -= take;
        if (rem <= 0.0) break;
      }
      double fixed_total = 0.0;
      for (std::size_t i = 0; i < cs.network.buses.size(); ++i)
        fixed_total += cs.network.buses[i].fixed_load_at(t);
      cs.assigned_power.push_back(fixed_total + (responsive - std::max(rem, 0.0)));
    } else {
      for (const Slot& s : slots)
        if (coin(0.5)) witness_load[t][s.bus] += s.q;
    }
  }

  if (sh.with_caps) {
    auto ix = NetworkIndex::build(cs.network);
    for (std::size_t l = 0; l < cs.network.lines.size(); ++l) {
      if (coin(0.4)) continue;  // leave unlimited
      double peak = 0.0;
      for (std::size_t t = 0; t < sh.horizon; ++t) {
        double flow = 0.0;
        for (std::size_t b : ix->subtree_of_line(l)) flow += witness_load[t][b];
        peak = std::max(peak, flow);
      }
      double cap = peak * (1.0 + uni(0.05, sh.cap_slack)) + 0.01;
      if (sh.on_grid) cap = std::ceil(cap / sh.step - 1e-9) * sh.step;
      cs.network.lines[l].capacity = cap;
    }
  }
  return cs;
}

// --- small aggregates used across suites -------------------------------

inline double total_fixed_load(const MarketCase& cs, std::size_t hour) {
  double s = 0.0;
  for (const Bus& b : cs.network.buses) s += b.fixed_load_at(hour);
  return s;
}

inline double total_bid_quantity(const MarketCase& cs, std::size_t hour) {
  double s = 0.0;
  for (const Bus& b : cs.network.buses) {
    if (b.is_root || !b.bid) continue;
    for (const BidSegment& g : b.bid->segments(hour)) s += g.max_quantity;
  }
  return s;
}

inline double max_benefit(const MarketCase& cs, std::size_t hour) {
  double m = 0.0;
  for (const Bus& b : cs.network.buses) {
    if (b.is_root || !b.bid) continue;
    for (const BidSegment& g : b.bid->segments(hour))
      m = std::max(m, g.benefit);
  }
  return m;
}

}  // namespace dmarket::testkit
