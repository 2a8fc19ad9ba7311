#pragma once

// Settlement over a cleared horizon: customers pay their nodal price for
// delivered demand (fixed plus responsive), the utility pays the wholesale
// price for the grid draw, and the surplus is exactly their difference.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmarket/clearing.hpp"
#include "dmarket/domain.hpp"

namespace dmarket {

struct SettlementRow {
  double customer_payment = 0.0;  // sum over buses: nodal price x demand
  double utility_payment = 0.0;   // wholesale price x grid draw
  double surplus = 0.0;           // customer_payment - utility_payment
  double balance_residual = 0.0;  // |grid draw - total delivered demand|
};

struct Settlement {
  std::vector<SettlementRow> hours;
  double customer_payment_total = 0.0;
  double utility_payment_total = 0.0;
  double surplus_total = 0.0;  // the exact difference of the two totals
};

inline SettlementRow settle_hour(const MarketCase& cs, std::size_t hour,
                                 const HourClearing& h) {
  detail::require_hour(cs, hour);
  if (h.dlmp.size() != cs.network.buses.size())
    throw std::invalid_argument(
        "clearing result does not match the case network");
  SettlementRow row;
  double demand_total = 0.0;
  for (std::size_t i = 0; i < cs.network.buses.size(); ++i) {
    const double d =
        cs.network.buses[i].fixed_load_at(hour) + h.responsive_at(i);
    row.customer_payment += h.dlmp[i] * d;
    demand_total += d;
  }
  row.utility_payment = cs.tlmp[hour] * h.grid_power;
  row.surplus = row.customer_payment - row.utility_payment;
  row.balance_residual = std::fabs(h.grid_power - demand_total);
  return row;
}

// Requires every hour cleared; a failed hour has no prices to settle.
inline Settlement settle(const MarketCase& cs, const HorizonClearing& hz) {
  if (hz.hours.size() != cs.horizon)
    throw std::invalid_argument(
        "clearing result does not match the case horizon");
  if (!hz.all_cleared())
    throw std::invalid_argument(
        "cannot settle: hour " + std::to_string(hz.failures.front().hour) +
        " did not clear (" + to_string(hz.failures.front().kind) + ")");
  Settlement s;
  s.hours.reserve(cs.horizon);
  for (std::size_t t = 0; t < cs.horizon; ++t) {
    s.hours.push_back(settle_hour(cs, t, *hz.hours[t]));
    s.customer_payment_total += s.hours.back().customer_payment;
    s.utility_payment_total += s.hours.back().utility_payment;
  }
  s.surplus_total = s.customer_payment_total - s.utility_payment_total;
  return s;
}

// Per hour and bus: (nodal price - wholesale price) x delivered demand.
// Each hour's entries sum to that hour's surplus.
inline std::vector<std::vector<double>> surplus_decomposition(
    const MarketCase& cs, const HorizonClearing& hz) {
  if (hz.hours.size() != cs.horizon || !hz.all_cleared())
    throw std::invalid_argument(
        "surplus decomposition requires a fully cleared horizon");
  std::vector<std::vector<double>> out(cs.horizon);
  for (std::size_t t = 0; t < cs.horizon; ++t) {
    const HourClearing& h = *hz.hours[t];
    out[t].resize(cs.network.buses.size());
    for (std::size_t i = 0; i < cs.network.buses.size(); ++i) {
      const double d =
          cs.network.buses[i].fixed_load_at(t) + h.responsive_at(i);
      out[t][i] = (h.dlmp[i] - cs.tlmp[t]) * d;
    }
  }
  return out;
}

}  // namespace dmarket
