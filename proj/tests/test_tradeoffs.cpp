#include "catch2/catch_amalgamated.hpp"
#include "qcompat/tradeoffs.hpp"

#include <cmath>

using namespace qcompat;
using Catch::Approx;

TEST_CASE("closed-form optimal curves") {
  REQUIRE(best_fidelity_unital_closed(0.0) == Approx(1.0).margin(1e-15));
  REQUIRE(best_fidelity_unital_closed(1.0) == Approx(2.0 / 3.0).margin(1e-15));
  REQUIRE(best_fidelity_unital_closed(0.6) == Approx((2.0 + 0.8) / 3.0).margin(1e-15));

  REQUIRE(best_quantumness_unital_closed(0.0) == Approx(1.0).margin(1e-15));
  REQUIRE(best_quantumness_unital_closed(0.6) == Approx(0.64).margin(1e-15));
  REQUIRE(best_quantumness_unital_closed(1.0) == Approx(0.0).margin(1e-15));

  REQUIRE(best_lqu_unital_closed(0.25) == Approx(0.75).margin(1e-15));
  REQUIRE(best_lqu_unital_closed(1.0) == Approx(0.0).margin(1e-15));

  REQUIRE_THROWS_AS(best_fidelity_unital_closed(1.5), std::invalid_argument);
  REQUIRE_THROWS_AS(best_quantumness_unital_closed(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(best_lqu_unital_closed(2.0), std::invalid_argument);
}

TEST_CASE("search configuration is validated") {
  const BinaryMeasurement m(0.5, Direction({1, 0, 0}));
  SearchConfig bad;
  bad.simplex_grid = 0;
  REQUIRE_THROWS_AS(best_lqu_search(m, bad), std::invalid_argument);
  bad = SearchConfig{};
  bad.refine_steps = -1;
  REQUIRE_THROWS_AS(best_lqu_search(m, bad), std::invalid_argument);
}

TEST_CASE("grid searches attain the closed forms") {
  const SearchConfig cfg{24, 1, 1};
  for (const double s : {0.0, 0.3, 0.7, 1.0}) {
    const BinaryMeasurement m(s, Direction({1, 0, 0}));

    const SearchResult f = best_fidelity_search(m, cfg);
    REQUIRE(f.value == Approx(best_fidelity_unital_closed(s)).margin(1e-9));
    REQUIRE(f.value <= best_fidelity_unital_closed(s) + 1e-9);

    const SearchResult q = best_quantumness_search(m, cfg, true);
    REQUIRE(q.value == Approx(best_quantumness_unital_closed(s)).margin(1e-9));

    const SearchResult l = best_lqu_search(m, cfg);
    REQUIRE(l.value == Approx(best_lqu_unital_closed(s)).margin(1e-9));
  }

  // The fidelity argmax at s = 0.8 is a two-weight vertex with large weight
  // (1 + sqrt(1 - s^2))/2 = 0.8; ties resolve to the lexicographically
  // smallest attaining channel, (0, 0, 0.2, 0.8).
  const SearchResult f8 = best_fidelity_search(BinaryMeasurement(0.8, Direction({1, 0, 0})), cfg);
  REQUIRE(f8.argmax[0] == Approx(0.0).margin(1e-12));
  REQUIRE(f8.argmax[1] == Approx(0.0).margin(1e-12));
  REQUIRE(f8.argmax[2] == Approx(0.2).margin(1e-12));
  REQUIRE(f8.argmax[3] == Approx(0.8).margin(1e-12));
}

TEST_CASE("searched optima stay below the closed curves across directions") {
  SearchConfig cfg{18, 3, 1};
  const BinaryMeasurement m(0.55, Direction(normalized(Vec3{1, 1, 1})));
  const SearchResult q = best_quantumness_search(m, cfg, false);
  REQUIRE(q.value <= best_quantumness_unital_closed(0.55) + 1e-9);
  const SearchResult f = best_fidelity_search(m, cfg);
  REQUIRE(f.value <= best_fidelity_unital_closed(0.55) + 1e-9);
}

TEST_CASE("pointwise fidelity-sharpness bound") {
  // Equality family: p = (a, 1-a, 0, 0).
  const auto [lhs_eq, holds_eq] = check_fidelity_sharpness_tradeoff(PauliProbabilities({0.7, 0.3, 0, 0}));
  REQUIRE(holds_eq);
  REQUIRE(lhs_eq == Approx(1.0).margin(1e-12));

  const auto [lhs, holds] = check_fidelity_sharpness_tradeoff(PauliProbabilities({0.6, 0.2, 0.1, 0.1}));
  REQUIRE(holds);
  REQUIRE(lhs < 1.0);

  // Below the hypothesis the bound does not apply and the check refuses to run.
  REQUIRE_THROWS_AS(check_fidelity_sharpness_tradeoff(counterexample_pm_below_half()), std::invalid_argument);

  // The counterexample really does break the inequality once evaluated raw.
  const PauliProbabilities bad = counterexample_pm_below_half();
  const double pm = 0.4, pmax = p_max_sorted(bad);
  REQUIRE((2.0 * pm - 1.0) * (2.0 * pm - 1.0) + pmax * pmax == Approx(1.04).margin(1e-12));
}

TEST_CASE("resource-sharpness relation") {
  const auto r = check_resource_sharpness_tradeoff(PauliProbabilities({0.4, 0.3, 0.2, 0.1}));
  REQUIRE(r.q_slack == Approx(0.028081641155).margin(1e-10));
  REQUIRE(r.q_slack >= -1e-12);
  REQUIRE(r.lqu_residual == Approx(0.0).margin(1e-12));

  // Equality of the quantumness relation on the two-weight family.
  const auto eq = check_resource_sharpness_tradeoff(PauliProbabilities({0.7, 0.3, 0, 0}));
  REQUIRE(eq.q_slack == Approx(0.0).margin(1e-12));
}

TEST_CASE("tradeoff points and scans") {
  const SearchConfig cfg{24, 1, 1};
  const TradeoffPoint pt = tradeoff_point(TradeoffKind::lqu, 0.5, cfg);
  REQUIRE(pt.s == 0.5);
  REQUIRE(pt.closed_form == Approx(0.5).margin(1e-15));
  REQUIRE(pt.searched == Approx(0.5).margin(1e-9));
  REQUIRE(pt.gap == Approx(pt.closed_form - pt.searched).margin(0));
  REQUIRE(pt.grid_resolution == 24);

  const auto scan = tradeoff_scan(TradeoffKind::fidelity, 5, cfg);
  REQUIRE(scan.size() == 5);
  REQUIRE(scan.front().s == 0.0);
  REQUIRE(scan.back().s == 1.0);
  REQUIRE(scan[2].s == Approx(0.5).margin(1e-15));

  const auto single = tradeoff_scan(TradeoffKind::quantumness, 1, cfg);
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].s == 0.0);

  REQUIRE_THROWS_AS(tradeoff_scan(TradeoffKind::lqu, 0, cfg), std::invalid_argument);
}
