#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dmarket/settlement.hpp"
#include "dmarket/testkit.hpp"

using namespace dmarket;
using Catch::Matchers::WithinAbs;

namespace {

MarketCase three_bus_congested() {
  MarketCase cs;
  cs.horizon = 1;
  cs.tlmp = {20.0};
  cs.assigned_power = {8.0};
  cs.network.root = 1;
  cs.network.buses = {
      {1, true, {}, std::nullopt},
      {2, false, {}, BidCurve::shared({{20.0, 6.0}})},
      {3, false, {}, BidCurve::shared({{40.0, 4.0}})},
  };
  cs.network.lines = {{1, 1, 2, std::nullopt}, {2, 2, 3, 3.0}};
  return cs;
}

}  // namespace

TEST_CASE("congestion rent shows up as settlement surplus") {
  MarketCase cs = three_bus_congested();
  SettlementRow row = settle_hour(cs, 0, clear_hour(cs, 0));
  // bus 2 pays 20 x 5, bus 3 pays 40 x 3; the utility pays 20 x 8
  REQUIRE_THAT(row.customer_payment, WithinAbs(220.0, 1e-9));
  REQUIRE_THAT(row.utility_payment, WithinAbs(160.0, 1e-9));
  REQUIRE_THAT(row.surplus, WithinAbs(60.0, 1e-9));
  REQUIRE(row.surplus == row.customer_payment - row.utility_payment);
  REQUIRE(row.balance_residual <= 1e-9);
}

TEST_CASE("a uniform-price hour settles at the price spread times volume") {
  MarketCase cs;
  cs.horizon = 1;
  cs.tlmp = {15.0};
  cs.assigned_power = {7.0};
  cs.network.root = 1;
  cs.network.buses = {
      {1, true, {}, std::nullopt},
      {2, false, {}, BidCurve::shared({{30.0, 5.0}, {20.0, 5.0}})},
  };
  cs.network.lines = {{7, 1, 2, std::nullopt}};
  SettlementRow row = settle_hour(cs, 0, clear_hour(cs, 0));
  REQUIRE_THAT(row.customer_payment, WithinAbs(140.0, 1e-9));  // 20 x 7
  REQUIRE_THAT(row.utility_payment, WithinAbs(105.0, 1e-9));   // 15 x 7
  REQUIRE_THAT(row.surplus, WithinAbs(35.0, 1e-9));
}

TEST_CASE("horizon settlement totals the hourly rows exactly") {
  std::mt19937 rng(606060);
  testkit::CaseShape sh;
  sh.horizon = 4;
  MarketCase cs = testkit::random_case(rng, sh);
  HorizonClearing hz = clear_horizon(cs);
  REQUIRE(hz.all_cleared());
  Settlement s = settle(cs, hz);
  REQUIRE(s.hours.size() == 4);
  double c = 0.0, u = 0.0;
  for (const SettlementRow& r : s.hours) {
    c += r.customer_payment;
    u += r.utility_payment;
  }
  REQUIRE(s.customer_payment_total == c);
  REQUIRE(s.utility_payment_total == u);
  REQUIRE(s.surplus_total ==
          s.customer_payment_total - s.utility_payment_total);
}

TEST_CASE("settlement refuses partial or mismatched clearing results") {
  MarketCase cs = three_bus_congested();
  cs.horizon = 2;
  cs.tlmp = {20.0, 20.0};
  cs.assigned_power = {8.0, 50.0};  // second hour cannot clear
  HorizonClearing hz = clear_horizon(cs);
  REQUIRE_FALSE(hz.all_cleared());
  REQUIRE_THROWS_AS(settle(cs, hz), std::invalid_argument);
  REQUIRE_THROWS_AS(surplus_decomposition(cs, hz), std::invalid_argument);

  MarketCase other = three_bus_congested();
  HorizonClearing ok = clear_horizon(other);
  cs.horizon = 1;  // horizon no longer matches hz built above
  REQUIRE_THROWS_AS(settle(cs, hz), std::invalid_argument);

  // network mismatch: clearing from a different topology
  MarketCase two;
  two.horizon = 1;
  two.tlmp = {20.0};
  two.assigned_power = {2.0};
  two.network.root = 1;
  two.network.buses = {{1, true, {}, std::nullopt},
                       {2, false, {}, BidCurve::shared({{30.0, 5.0}})}};
  two.network.lines = {{7, 1, 2, std::nullopt}};
  HourClearing h = clear_hour(two, 0);
  REQUIRE_THROWS_AS(settle_hour(other, 0, h), std::invalid_argument);
}

TEST_CASE("delivered demand balances the grid draw and the surplus "
          "decomposes by bus") {
  std::mt19937 rng(96321);
  for (int rep = 0; rep < 30; ++rep) {
    testkit::CaseShape sh;
    sh.horizon = (rep % 2) ? 2 : 1;
    sh.mode = (rep % 3 == 0) ? ClearingMode::VariablePower
                             : ClearingMode::ConstantPower;
    MarketCase cs = testkit::random_case(rng, sh);
    HorizonClearing hz = clear_horizon(cs);
    REQUIRE(hz.all_cleared());
    Settlement s = settle(cs, hz);
    auto dec = surplus_decomposition(cs, hz);
    for (std::size_t t = 0; t < cs.horizon; ++t) {
      REQUIRE(s.hours[t].balance_residual <= 1e-7);
      REQUIRE(s.hours[t].surplus ==
              s.hours[t].customer_payment - s.hours[t].utility_payment);
      double sum = 0.0;
      for (double term : dec[t]) sum += term;
      CAPTURE(rep, t, sum, s.hours[t].surplus);
      REQUIRE_THAT(sum, WithinAbs(s.hours[t].surplus,
                                  1e-9 * (1.0 + std::fabs(s.hours[t].surplus)) +
                                      1e-7));
    }
  }
}
