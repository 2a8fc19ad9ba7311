#pragma once

// Merit-order view of one hour's demand side: all bid segments merged into
// a single descending price ladder, plus the price-insensitive base load.

#include <functional>
#include <map>
#include <vector>

#include "dmarket/domain.hpp"

namespace dmarket {

struct AggregatePoint {
  double benefit = 0.0;     // $/MWh
  double quantity = 0.0;    // MW offered at exactly this benefit
  double cumulative = 0.0;  // MW offered at this benefit or better
};

struct AggregateCurve {
  double inelastic_base = 0.0;          // fixed load, served at any price
  std::vector<AggregatePoint> points;   // strictly descending benefit

  // elastic quantity whose willingness to pay reaches `price`
  double quantity_at_or_above(double price) const {
    double q = 0.0;
    for (const AggregatePoint& p : points) {
      if (p.benefit < price) break;
      q += p.quantity;
    }
    return q;
  }
  double elastic_total() const {
    return points.empty() ? 0.0 : points.back().cumulative;
  }
};

// Segments with equal benefit merge into one point; zero-quantity segments
// drop out.
inline AggregateCurve aggregate_bids(const MarketCase& cs, std::size_t hour) {
  detail::require_hour(cs, hour);
  AggregateCurve curve;
  std::map<double, double, std::greater<double>> ladder;
  for (const Bus& b : cs.network.buses) {
    curve.inelastic_base += b.fixed_load_at(hour);
    if (b.is_root || !b.bid) continue;
    for (const BidSegment& s : b.bid->segments(hour))
      if (s.max_quantity > 0.0) ladder[s.benefit] += s.max_quantity;
  }
  double cum = 0.0;
  curve.points.reserve(ladder.size());
  for (auto [benefit, quantity] : ladder) {
    cum += quantity;
    curve.points.push_back({benefit, quantity, cum});
  }
  return curve;
}

}  // namespace dmarket
