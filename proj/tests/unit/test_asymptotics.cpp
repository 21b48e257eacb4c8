#include <doctest.h>

#include <cmath>

#include "impact_game/asymptotics.hpp"
#include "impact_game/equilibrium.hpp"
#include "support.hpp"

using namespace impact_game;

TEST_CASE("grid index maps grid points to themselves and rounds up between them") {
  CHECK(grid_index(0.0, 1.0, 10) == 0);
  CHECK(grid_index(0.3, 1.0, 10) == 3);
  CHECK(grid_index(0.31, 1.0, 10) == 4);
  CHECK(grid_index(1.0, 1.0, 10) == 10);
  CHECK(grid_index(0.7, 0.7, 7) == 7);
  for (std::size_t k = 0; k <= 300; ++k) {
    REQUIRE(grid_index(static_cast<double>(k) * 1.3 / 300.0, 1.3, 300) == k);
  }
}

TEST_CASE("renormalized paths start at one and end at the terminal trade") {
  testing::ParamGenerator gen(61);
  for (int rep = 0; rep < 20; ++rep) {
    const GameParams p = gen.next(300);
    const auto sol = equilibrium_strategies(p);
    const RenormalizedPaths paths(sol);
    CHECK(paths.V(0.0) == 1.0);
    CHECK(paths.W(0.0) == 1.0);
    CHECK(paths.V(p.T) == sol.v.back());
    CHECK(paths.W(p.T) == sol.w.back());
    double partial = 0.0;
    for (std::size_t k = 0; k < p.N; ++k) partial += sol.v[k];
    CHECK(paths.V(p.T) == doctest::Approx(1.0 - partial).epsilon(1e-10).scale(1.0));
    CHECK_THROWS_AS(paths.V(-0.1), ParameterError);
    CHECK_THROWS_AS(paths.W(p.T * 1.01), ParameterError);
  }
}

TEST_CASE("the terminal trades approach the jumps of the limit curves") {
  // V is continuous at T, so its last trade dies out; W keeps a terminal
  // block of size 1 / (rho T + 1).
  double prev_v = 1.0, prev_w = 1.0;
  for (std::size_t N : {50u, 200u, 800u, 3200u}) {
    const auto paths = renormalized_paths(testing::make_params(1.0, 1.0, N, 0.25));
    const double gap_v = std::abs(paths.V(1.0));
    const double gap_w = std::abs(paths.W(1.0) - 0.5);
    CHECK(gap_v < prev_v);
    CHECK(gap_w < prev_w);
    prev_v = gap_v;
    prev_w = gap_w;
  }
  CHECK(prev_v < 2e-3);
  CHECK(prev_w < 2e-3);
}

TEST_CASE("limit curves: boundary values and monotonicity") {
  const LimitBundle lim(1.0, 1.0, 1.0, 1.0);
  CHECK(lim.w_limit(0.0) == 1.0);
  CHECK(lim.w_limit(1.0) == 0.5);  // left limit; the curve jumps to 0 at T
  CHECK(lim.w_limit(0.5) == doctest::Approx(0.75));
  double prev = lim.v_limit(0.0);
  CHECK(prev < 1.0);
  for (int i = 1; i <= 100; ++i) {
    const double v = lim.v_limit(i / 100.0);
    REQUIRE(v < prev);
    prev = v;
  }
  CHECK(lim.v_limit(1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(lim.v_limit(1.5), ParameterError);
}

TEST_CASE("limits are the same for every positive theta") {
  const GameParams a = testing::make_params(1.3, 0.7, 10, 0.05, 1.0, -0.3);
  GameParams b = a;
  b.theta = 5.0;
  b.N = 999;
  CHECK(limit_bundle(a) == limit_bundle(b));
}

TEST_CASE("rho T = 1, x = y = 1: pinned cost limits") {
  const LimitBundle lim(1.0, 1.0, 1.0, 1.0);
  // independent 40-digit evaluation of the closed-form limits
  CHECK(lim.cost_limit_pos == doctest::Approx(0.739954633782462).epsilon(1e-14));
  CHECK(lim.cost_limit_even == doctest::Approx(0.747445753272619).epsilon(1e-14));
  CHECK(lim.cost_limit_odd == doctest::Approx(0.757313289509374).epsilon(1e-14));
}

TEST_CASE("x = -y: only the difference term survives") {
  for (double rt : {0.3, 1.0, 4.0}) {
    const LimitBundle lim(rt, 1.0, 1.5, -1.5);
    CHECK(lim.cost_limit_pos == doctest::Approx(9.0 / (16.0 * (rt + 1.0) * (rt + 1.0))));
    CHECK(lim.tr_minus_tc_liminf == 0.0);
  }
}

TEST_CASE("theta = 1/4: the cost error shrinks along N") {
  const GameParams base = testing::make_params(1.0, 1.0, 2, 0.25);
  const std::vector<std::size_t> ns = {50, 100, 200, 400};
  const auto study = convergence_study(base, ns);
  REQUIRE(study.rows.size() == 4);
  CHECK(study.error_decreased);
  CHECK(study.rows[3].abs_error < study.rows[0].abs_error);
  CHECK(study.monotone_fraction == 1.0);
  for (std::size_t i = 0; i < ns.size(); ++i) CHECK(study.rows[i].N == ns[i]);
}

TEST_CASE("theta = 0: even and odd N approach different limits") {
  const GameParams base = testing::make_params(1.0, 1.0, 2, 0.0);
  const std::vector<std::size_t> ns = {100, 101, 400, 401};
  const auto study = convergence_study(base, ns);
  const LimitBundle lim = limit_bundle(base);
  CHECK(lim.cost_limit_even < lim.cost_limit_odd);
  CHECK(study.rows[0].limit == lim.cost_limit_even);
  CHECK(study.rows[1].limit == lim.cost_limit_odd);
  CHECK(study.rows[2].abs_error < study.rows[0].abs_error);
  CHECK(study.rows[3].abs_error < study.rows[1].abs_error);
  CHECK(std::abs(study.rows[2].expected_cost - lim.cost_limit_even) < 1e-2 * lim.cost_limit_even);
  CHECK(std::abs(study.rows[3].expected_cost - lim.cost_limit_odd) < 1e-2 * lim.cost_limit_odd);
}

TEST_CASE("convergence study rejects unsorted lists") {
  const std::vector<std::size_t> ns = {10, 5};
  CHECK_THROWS_AS(convergence_study(GameParams{}, ns), ParameterError);
}

TEST_CASE("theta = 0: V and W approach the two cluster curves") {
  double prev_v = 1.0, prev_w = 1.0;
  for (std::size_t n = 50; n <= 200; n += 50) {
    const auto d = cluster_distance(testing::make_params(1.0, 1.0, 2 * n, 0.0), 0.5);
    CHECK(d.t_grid == 0.5);
    CHECK(d.distance_V < prev_v);
    CHECK(d.distance_W < prev_w);
    prev_v = d.distance_V;
    prev_w = d.distance_W;
  }
  CHECK(prev_v <= 5e-3);
  CHECK(prev_w <= 5e-3);
  CHECK_THROWS_AS(cluster_distance(testing::make_params(1.0, 1.0, 10, 0.1), 0.5), ParameterError);
}

TEST_CASE("theta = 0: V at T/2 stays inside the cluster band") {
  const LimitBundle lim(1.0, 1.0, 1.0, 1.0);
  for (std::size_t n = 25; n <= 200; ++n) {
    const auto paths = renormalized_paths(testing::make_params(1.0, 1.0, 2 * n, 0.0));
    const double tg = static_cast<double>(grid_index(0.5, 1.0, 2 * n)) / static_cast<double>(2 * n);
    const double lo = std::min(lim.f_plus(tg), lim.f_minus(tg));
    const double hi = std::max(lim.f_plus(tg), lim.f_minus(tg));
    const double v = paths.V(0.5);
    REQUIRE(v >= lo - 1e-2);
    REQUIRE(v <= hi + 1e-2);
  }
}

TEST_CASE("positive theta limit beats the theta = 0 liminf above the threshold") {
  CHECK(cost_comparison_threshold() == doctest::Approx(0.690511955380202).epsilon(1e-14));
  for (double rt : {0.70, 1.0, 3.0, 6.0}) {
    const auto c = cost_comparison_predicate(rt, 1.0, 1.0);
    CHECK(c.holds);
    CHECK(c.margin > 0.0);
  }
  // below the threshold nothing is claimed; only the margin is reported
  const auto low = cost_comparison_predicate(0.30, 1.0, 1.0);
  CHECK(std::isfinite(low.margin));
  CHECK(low.holds == (low.margin > 0.0));
  const auto anti = cost_comparison_predicate(1.0, 1.0, -1.0);
  const LimitBundle lim(1.0, 1.0, 1.0, -1.0);
  CHECK(anti.margin == doctest::Approx(std::min(lim.cost_limit_even, lim.cost_limit_odd) -
                                      lim.cost_limit_pos));
}

TEST_CASE("tax revenue approaches its limit and the liminf gap is nonnegative") {
  const GameParams p = testing::make_params(1.0, 1.0, 500, 0.25, 1.0, 0.5);
  const auto study = convergence_study(p, std::vector<std::size_t>{500});
  const LimitBundle lim = limit_bundle(p);
  CHECK(std::abs(study.rows[0].tax_revenue - lim.tr_limit) <= 1e-2 * lim.tr_limit);
  for (double rt : {0.1, 1.0, 5.0, 10.0}) {
    for (double x : {-2.0, 0.5, 1.0}) {
      for (double y : {-1.0, 0.5}) {
        CHECK(LimitBundle(rt, 1.0, x, y).tr_minus_tc_liminf >= 0.0);
      }
    }
  }
}
