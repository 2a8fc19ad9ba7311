#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dmarket/clearing.hpp"
#include "dmarket/testkit.hpp"

using namespace dmarket;
using Catch::Matchers::WithinAbs;

namespace {

MarketCase two_bus(double assigned, double fixed = 0.0) {
  MarketCase cs;
  cs.horizon = 1;
  cs.tlmp = {20.0};
  cs.assigned_power = {assigned};
  cs.network.root = 1;
  cs.network.buses = {
      {1, true, {}, std::nullopt},
      {2, false, {}, BidCurve::shared({{30.0, 5.0}, {20.0, 5.0}})},
  };
  if (fixed > 0.0) cs.network.buses[1].fixed_load = {fixed};
  cs.network.lines = {{7, 1, 2, std::nullopt}};
  return cs;
}

// tiny quantities so grid enumeration stays cheap
testkit::CaseShape tiny_grid_shape(ClearingMode mode) {
  testkit::CaseShape sh;
  sh.min_buses = 2;
  sh.max_buses = 4;
  sh.max_segments = 2;
  sh.mode = mode;
  sh.on_grid = true;
  sh.step = 0.01;
  sh.max_segment_quantity = 0.12;
  sh.max_fixed_load = 0.05;
  return sh;
}

}  // namespace

TEST_CASE("grid enumeration recovers the known optimum of a hand case") {
  auto r = testkit::brute_force_clear(two_bus(7.0), 0, 0.5);
  REQUIRE(r.feasible);
  REQUIRE_THAT(r.welfare, WithinAbs(190.0, 1e-9));
  REQUIRE_THAT(r.grid_power, WithinAbs(7.0, 1e-9));
  REQUIRE_THAT(r.allocations[1][0], WithinAbs(5.0, 1e-9));
  REQUIRE_THAT(r.allocations[1][1], WithinAbs(2.0, 1e-9));
}

TEST_CASE("grid enumeration agrees with the solver about infeasibility") {
  REQUIRE_FALSE(testkit::brute_force_clear(two_bus(0.3, 0.5), 0, 0.1).feasible);
  REQUIRE_FALSE(testkit::brute_force_clear(two_bus(10.5), 0, 0.1).feasible);
  REQUIRE_THROWS_AS(testkit::brute_force_clear(two_bus(7.0), 0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("solver and exhaustive search match on small on-grid cases") {
  std::mt19937 rng(774411);
  auto sh = tiny_grid_shape(ClearingMode::ConstantPower);
  int agreed = 0;
  for (int rep = 0; rep < 25; ++rep) {
    MarketCase cs = testkit::random_case(rng, sh);
    auto ref = testkit::brute_force_clear(cs, 0, sh.step);
    const double tol = sh.step * testkit::max_benefit(cs, 0) + 1e-9;
    CAPTURE(rep, ref.feasible, ref.welfare, tol);
    REQUIRE(ref.feasible);  // generator promises a feasible witness
    HourClearing h = clear_hour(cs, 0);
    REQUIRE_THAT(h.welfare, WithinAbs(ref.welfare, tol));
    REQUIRE_THAT(h.grid_power, WithinAbs(ref.grid_power, 1e-9));
    ++agreed;
  }
  REQUIRE(agreed == 25);
}

TEST_CASE("solver and exhaustive search match with variable assigned power") {
  std::mt19937 rng(83219);
  auto sh = tiny_grid_shape(ClearingMode::VariablePower);
  for (int rep = 0; rep < 15; ++rep) {
    MarketCase cs = testkit::random_case(rng, sh);
    auto ref = testkit::brute_force_clear(cs, 0, sh.step);
    REQUIRE(ref.feasible);
    HourClearing h = clear_hour(cs, 0);
    const double tol = sh.step * testkit::max_benefit(cs, 0) + 1e-9;
    CAPTURE(rep, ref.welfare, h.welfare);
    REQUIRE_THAT(h.welfare, WithinAbs(ref.welfare, tol));
  }
}

TEST_CASE("finite-difference prices reproduce the bus duals") {
  std::mt19937 rng(995511);
  testkit::CaseShape sh;
  sh.min_buses = 3;
  sh.max_buses = 10;
  int checked = 0;
  for (int rep = 0; rep < 60 && checked < 25; ++rep) {
    MarketCase cs = testkit::random_case(rng, sh);
    HourClearing h;
    try {
      h = clear_hour(cs, 0);
    } catch (const ClearingInfeasible&) {
      continue;
    }
    if (h.degenerate_prices) continue;
    auto ix = NetworkIndex::build(cs.network);
    for (std::size_t i = 0; i < cs.network.buses.size() && checked < 25; ++i) {
      if (cs.network.buses[i].is_root) continue;
      double fd;
      try {
        fd = testkit::perturbation_price(cs, 0, cs.network.buses[i].id, 1e-5);
      } catch (const testkit::PerturbationFailure&) {
        continue;
      }
      CAPTURE(rep, i, fd, h.dlmp[i]);
      REQUIRE_THAT(fd, WithinAbs(h.dlmp[i],
                                 1e-3 * (1.0 + std::fabs(h.dlmp[i]))));
      ++checked;
    }
  }
  REQUIRE(checked >= 25);
}

TEST_CASE("perturbation probing reports its failure modes") {
  // assigned power on a segment boundary: prices are ambiguous
  REQUIRE_THROWS_AS(testkit::perturbation_price(two_bus(5.0), 0, 2),
                    testkit::PerturbationFailure);
  REQUIRE_THROWS_AS(testkit::perturbation_price(two_bus(7.0), 0, 99),
                    std::out_of_range);
  REQUIRE_THROWS_AS(testkit::perturbation_price(two_bus(7.0), 0, 1),
                    std::invalid_argument);
}

TEST_CASE("generated cases are always valid and always clear") {
  std::mt19937 rng(123321);
  for (int rep = 0; rep < 50; ++rep) {
    testkit::CaseShape sh;
    sh.horizon = (rep % 3 == 0) ? 4 : 1;
    sh.mode = (rep % 4 == 0) ? ClearingMode::VariablePower
                             : ClearingMode::ConstantPower;
    sh.on_grid = rep % 5 == 0;
    MarketCase cs = testkit::random_case(rng, sh);
    auto v = validate_case(cs);
    CAPTURE(rep, v.empty() ? "" : v.front().where + ": " + v.front().message);
    REQUIRE(v.empty());
    for (std::size_t t = 0; t < cs.horizon; ++t)
      REQUIRE_NOTHROW(clear_hour(cs, t));
  }
}
