#include <doctest.h>

#include <cmath>

#include "impact_game/core_model.hpp"
#include "impact_game/costs.hpp"
#include "impact_game/equilibrium.hpp"
#include "support.hpp"

using namespace impact_game;

TEST_CASE("zero strategies cost nothing") {
  const GameParams p = testing::make_params(1.0, 1.0, 10, 0.3);
  const std::vector<double> z(p.size(), 0.0);
  CHECK(expected_cost(p, z, z) == 0.0);
  CHECK_THROWS_AS(expected_cost(p, std::vector<double>(3), z), ParameterError);
}

TEST_CASE("rho T = 1, x = y = 1, theta = 1/4, N = 100: pinned equilibrium cost") {
  const GameParams p = testing::make_params(1.0, 1.0, 100, 0.25);
  const auto sol = equilibrium_strategies(p);
  CHECK(expected_cost(p, sol.xi_star, sol.eta_star) ==
        doctest::Approx(0.740635537727).epsilon(1e-11));
}

TEST_CASE("sum of both agents' costs uses the symmetric kernel in the cross term") {
  testing::ParamGenerator gen(51);
  for (int rep = 0; rep < 30; ++rep) {
    const GameParams p = gen.next(200);
    const auto xi = gen.vector(p.size());
    const auto eta = gen.vector(p.size());
    const double a = p.alpha();
    auto quad = [&](const std::vector<double>& u) {
      const auto gu = gamma_apply(a, u);
      double s = 0.0;
      for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * (0.5 * gu[k] + p.theta * u[k]);
      return s;
    };
    const auto g_eta = gamma_apply(a, eta);
    double cross = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) cross += xi[k] * g_eta[k];
    const double lhs = expected_cost(p, xi, eta) + expected_cost(p, eta, xi);
    const double rhs = quad(xi) + quad(eta) + cross;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("six-term decomposition agrees with the quadratic form") {
  testing::ParamGenerator gen(52);
  for (int rep = 0; rep < 100; ++rep) {
    GameParams p = gen.next(400);
    const auto b = cost_decomposition(p);
    CHECK(b.decomposition_cost_xi == doctest::Approx(b.cost_xi).epsilon(1e-9).scale(1e-3));
    CHECK(b.cost_xi + b.cost_eta == b.total_cost);
    CHECK(b.tax_revenue >= 0.0);
  }
}

TEST_CASE("decomposition terms vanish under symmetry and antisymmetry") {
  auto b = cost_decomposition(testing::make_params(1.0, 1.0, 30, 0.1, 2.0, 2.0));
  CHECK(b.decomposition_terms[1] == 0.0);
  CHECK(b.decomposition_terms[2] == 0.0);
  CHECK(b.decomposition_terms[4] == 0.0);
  CHECK(b.decomposition_terms[5] == 0.0);
  b = cost_decomposition(testing::make_params(1.0, 1.0, 30, 0.1, 2.0, -2.0));
  CHECK(b.decomposition_terms[0] == 0.0);
  CHECK(b.decomposition_terms[1] == 0.0);
  CHECK(b.decomposition_terms[3] == 0.0);
  CHECK(b.decomposition_terms[4] == 0.0);
}

TEST_CASE("swapping the agents swaps the costs") {
  testing::ParamGenerator gen(53);
  for (int rep = 0; rep < 20; ++rep) {
    GameParams p = gen.next(200);
    const auto a = cost_decomposition(p);
    std::swap(p.x, p.y);
    const auto b = cost_decomposition(p);
    CHECK(a.cost_xi == doctest::Approx(b.cost_eta).epsilon(1e-12).scale(1.0));
    CHECK(a.cost_eta == doctest::Approx(b.cost_xi).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("tax revenue is zero without tax and nondecreasing in theta at fixed strategies") {
  const GameParams p = testing::make_params(1.0, 1.0, 40, 0.0, 1.0, 0.5);
  CHECK(tax_metrics(p).tax_revenue == 0.0);
  CHECK(tax_metrics(p).taxation_cost == 0.0);
  const auto sol = equilibrium_strategies(p.with_theta(0.3));
  double prev = -1.0;
  for (double th = 0.0; th <= 2.0; th += 0.1) {
    const double tr = tax_revenue(th, sol.xi_star, sol.eta_star);
    CHECK(tr >= prev);
    prev = tr;
  }
}

TEST_CASE("taxation cost matches two separate solves") {
  const GameParams p = testing::make_params(1.0, 1.0, 60, 0.25, 1.0, 0.5);
  const auto m = tax_metrics(p);
  const auto taxed = cost_decomposition(p);
  const auto free = cost_decomposition(p.with_theta(0.0));
  CHECK(m.taxation_cost == doctest::Approx(taxed.total_cost - free.total_cost).epsilon(1e-13));
  CHECK(taxed.taxation_cost == doctest::Approx(m.taxation_cost).epsilon(1e-13));
}

TEST_CASE("theta = 1/4, x = 1, y = 1/2: revenue exceeds the taxation cost for large N") {
  for (std::size_t N = 40; N <= 100; N += 10) {
    const auto m = tax_metrics(testing::make_params(1.0, 1.0, N, 0.25, 1.0, 0.5));
    CHECK(m.tax_revenue > m.taxation_cost);
  }
}
