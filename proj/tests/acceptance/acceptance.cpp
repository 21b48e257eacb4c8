// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "impact_game/asymptotics.hpp"
#include "impact_game/closed_form.hpp"
#include "impact_game/continuous_time.hpp"
#include "impact_game/costs.hpp"
#include "impact_game/dense.hpp"
#include "impact_game/equilibrium.hpp"
#include "impact_game/montecarlo.hpp"
#include "quadrature_oracle.hpp"
#include "support.hpp"

using namespace impact_game;

namespace {

const std::vector<std::size_t> kGridN = {2, 3, 5, 10, 50, 200};
const std::vector<double> kGridTheta = {0.0, 0.05, 0.24, 0.25, 1.0};
const std::vector<double> kGridRhoT = {0.1, 1.0, 10.0};

std::vector<GameParams> grid() {
  std::vector<GameParams> out;
  for (std::size_t n : kGridN) {
    for (double th : kGridTheta) {
      for (double rt : kGridRhoT) out.push_back(testing::make_params(rt, 1.0, n, th));
    }
  }
  return out;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0 && secs > budget_s) {
    o.pass = false;
    o.detail += fmt(" runtime %.2fs exceeds %.0fs", secs, budget_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs,
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome solver_equivalence() {
  double worst_nu = 0.0, worst_om = 0.0;
  for (const GameParams& p : grid()) {
    const auto nu_s = solve_nu(p);
    const auto nu_d = dense::solve_nu(p);
    const auto nu_c = nu_closed_form(p);
    worst_nu = std::max({worst_nu, testing::rel_diff(nu_s, nu_d), testing::rel_diff(nu_c, nu_d),
                         testing::rel_diff(nu_c, nu_s)});
    const auto om_s = solve_omega(p);
    const auto om_d = dense::solve_omega(p);
    const auto om_c = omega_closed_form(p);
    worst_om = std::max({worst_om, testing::rel_diff(om_s, om_d), testing::rel_diff(om_c, om_d),
                         testing::rel_diff(om_c, om_s)});
  }
  return {worst_nu <= 1e-8 && worst_om <= 1e-8,
          fmt("worst nu %.2e, omega %.2e (tol 1e-8)", worst_nu, worst_om)};
}

Outcome residuals() {
  double rn = 0.0, ro = 0.0;
  for (const GameParams& p : grid()) {
    rn = std::max(rn, nu_residual(p, solve_nu(p)));
    ro = std::max(ro, omega_residual(p, solve_omega(p)));
  }
  return {rn <= 1e-10 && ro <= 1e-12, fmt("nu %.2e (tol 1e-10), omega %.2e (tol 1e-12)", rn, ro)};
}

Outcome threshold() {
  double worst = INFINITY;
  for (std::size_t n : kGridN) {
    for (double rt : kGridRhoT) {
      const auto r = oscillation_report(testing::make_params(rt, 1.0, n, 0.25));
      worst = std::min({worst, r.min_component_v, r.min_component_w});
    }
  }
  const std::vector<double> rts = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  const auto hit = find_negative_component(0.24, 200, rts, 1e-8);
  const bool ok = worst >= -1e-12 && hit.has_value();
  std::string d = fmt("theta=0.25 min component %.2e; ", worst);
  if (hit) {
    d += fmt("theta=0.24 hit at N=%.0f, rhoT=%g, min %.3e", double(hit->N), hit->rhoT,
             hit->min_component);
  } else {
    d += "theta=0.24 search found no negative component";
  }
  return {ok, d};
}

Outcome nash_certificate() {
  double worst_foc = 0.0, worst_drop = 0.0;
  testing::ParamGenerator gen(2024);
  const auto pts = grid();
  for (const GameParams& p : pts) {
    const auto sol = equilibrium_strategies(p);
    worst_foc = std::max(worst_foc, sol.foc_deviation / sol.foc_scale);
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const GameParams& p = pts[static_cast<std::size_t>(trial) % pts.size()];
    const auto sol = equilibrium_strategies(p);
    const double base = expected_cost(p, sol.xi_star, sol.eta_star);
    auto d = gen.vector(p.size(), 1e-3);
    double mean = 0.0;
    for (double e : d) mean += e / static_cast<double>(d.size());
    auto xi = sol.xi_star;
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] += d[k] - mean;
    worst_drop = std::max(worst_drop, base - expected_cost(p, xi, sol.eta_star));
  }
  return {worst_foc <= 1e-9 && worst_drop <= 1e-12,
          fmt("foc %.2e (tol 1e-9); largest cost drop over 1000 perturbations %.2e (tol 1e-12)",
              worst_foc, worst_drop)};
}

Outcome cost_convergence() {
  const GameParams base = testing::make_params(1.0, 1.0, 2, 0.25);
  const std::vector<std::size_t> ns = {100, 800};
  const auto study = convergence_study(base, ns);
  const double lim = study.rows[0].limit;
  const double e100 = study.rows[0].abs_error;
  const double e800 = study.rows[1].abs_error;
  return {e800 < e100 && e800 < 1e-2 * std::abs(lim),
          fmt("|err| N=100 %.3e, N=800 %.3e, limit %.12f", e100, e800, lim)};
}

Outcome parity_limits() {
  const GameParams base = testing::make_params(1.0, 1.0, 2, 0.0);
  const std::vector<std::size_t> ns = {800, 801};
  const auto study = convergence_study(base, ns);
  const LimitBundle lim = limit_bundle(base);
  const double re = std::abs(study.rows[0].expected_cost - lim.cost_limit_even) / lim.cost_limit_even;
  const double ro = std::abs(study.rows[1].expected_cost - lim.cost_limit_odd) / lim.cost_limit_odd;
  const bool ok = re <= 1e-2 && ro <= 1e-2 && lim.cost_limit_even < lim.cost_limit_odd;
  return {ok, fmt("rel err even %.2e, odd %.2e; limits differ by %.4e", re, ro,
                  lim.cost_limit_odd - lim.cost_limit_even)};
}

Outcome cluster_bracketing() {
  ClusterDistance last;
  for (std::size_t n = 100; n <= 400; n += 50) {
    last = cluster_distance(testing::make_params(1.0, 1.0, 2 * n, 0.0), 0.5);
  }
  return {last.distance_V <= 5e-3 && last.distance_W <= 5e-3,
          fmt("2N=800 at t=%.3f: dist V %.2e, dist W %.2e (tol 5e-3)", last.t_grid,
              last.distance_V, last.distance_W)};
}

Outcome cost_comparison() {
  double worst = INFINITY;
  bool ok = true;
  for (double rt : {0.70, 1.0, 3.0, 6.0}) {
    const auto c = cost_comparison_predicate(rt, 1.0, 1.0);
    ok = ok && c.holds && c.margin > 0.0;
    worst = std::min(worst, c.margin);
  }
  return {ok, fmt("smallest margin %.4e", worst)};
}

Outcome tax_limits() {
  const GameParams p = testing::make_params(1.0, 1.0, 500, 0.25, 1.0, 0.5);
  const double tr = tax_metrics(p).tax_revenue;
  const double lim = limit_bundle(p).tr_limit;
  const double rel = std::abs(tr - lim) / lim;
  double min_gap = INFINITY;
  int points = 0;
  for (double rt : {0.1, 1.0, 5.0, 10.0}) {
    for (auto [x, y] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.5}, std::pair{2.0, -1.0},
                        std::pair{-1.0, 3.0}, std::pair{0.5, 0.0}}) {
      min_gap = std::min(min_gap, LimitBundle(rt, 1.0, x, y).tr_minus_tc_liminf);
      ++points;
    }
  }
  double anti = 0.0;
  for (double rt : {0.1, 1.0, 5.0, 10.0}) {
    anti = std::max(anti, std::abs(LimitBundle(rt, 1.0, 1.5, -1.5).tr_minus_tc_liminf));
  }
  const bool ok = rel <= 1e-2 && min_gap >= 0.0 && anti == 0.0 && points == 20;
  return {ok, fmt("TR_500 rel err %.2e; min liminf over 20 points %.3e; at x=-y %.1e", rel,
                  min_gap, anti)};
}

const std::pair<double, double> kInventories[] = {{1.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}};
const double kContinuousRhoT[] = {0.5, 1.0, 5.0};

Outcome fredholm() {
  double dev = 0.0, cst = 0.0;
  for (auto [x, y] : kInventories) {
    for (double rt : kContinuousRhoT) {
      const auto r = fredholm_residual(rt, 1.0, x, y, 0.25, 257);
      dev = std::max(dev, r.max_abs_deviation);
      cst = std::max({cst, std::abs(r.constant_estimate_agent1 - r.reference_constant_agent1),
                      std::abs(r.constant_estimate_agent2 - r.reference_constant_agent2)});
    }
  }
  return {dev <= 1e-10 && cst <= 1e-12,
          fmt("max deviation %.2e (tol 1e-10), constant error %.2e (tol 1e-12)", dev, cst)};
}

Outcome continuous_cost_check() {
  double worst_lim = 0.0, worst_quad = 0.0;
  for (auto [x, y] : kInventories) {
    for (double rt : kContinuousRhoT) {
      const double c = continuous_cost(rt, 1.0, x, y);
      const double lim = LimitBundle(rt, 1.0, x, y).cost_limit_pos;
      worst_lim = std::max(worst_lim, std::abs(c - lim));
      const auto eq = continuous_equilibrium(rt, 1.0, x, y);
      worst_quad = std::max(worst_quad, std::abs(testing::quadrature_cost(eq.X, eq.Y, rt, 0.25) - c));
    }
  }
  return {worst_lim <= 1e-10 && worst_quad <= 1e-6,
          fmt("vs limit %.2e (tol 1e-10), vs quadrature %.2e (tol 1e-6)", worst_lim, worst_quad)};
}

Outcome monte_carlo() {
  double worst_z = 0.0;
  for (double theta : {0.0, 0.25}) {
    const GameParams p = testing::make_params(1.0, 1.0, 50, theta, 1.0, 0.5);
    const auto sol = equilibrium_strategies(p);
    const double fx = expected_cost(p, sol.xi_star, sol.eta_star);
    const double fe = expected_cost(p, sol.eta_star, sol.xi_star);
    for (PriceModel m : {PriceModel::constant_zero, PriceModel::random_walk}) {
      SimConfig cfg;
      cfg.n_samples = 100000;
      cfg.price_model = m;
      const auto r = simulate_cost(p, sol.xi_star, sol.eta_star, cfg);
      worst_z = std::max({worst_z, std::abs(r.mean_xi_cost - fx) / r.stderr_xi,
                          std::abs(r.mean_eta_cost - fe) / r.stderr_eta});
    }
  }
  return {worst_z <= 3.0, fmt("largest |z| %.3f over 8 means (tol 3)", worst_z)};
}

}  // namespace

int main() {
  criterion(1, "solver_equivalence", 10.0, solver_equivalence);
  criterion(2, "defining_residuals", 0.0, residuals);
  criterion(3, "oscillation_threshold", 0.0, threshold);
  criterion(4, "nash_certificate", 0.0, nash_certificate);
  criterion(5, "cost_limit_convergence", 5.0, cost_convergence);
  criterion(6, "parity_limits", 0.0, parity_limits);
  criterion(7, "cluster_bracketing", 0.0, cluster_bracketing);
  criterion(8, "cost_comparison", 0.0, cost_comparison);
  criterion(9, "tax_limits", 0.0, tax_limits);
  criterion(10, "fredholm_condition", 0.0, fredholm);
  criterion(11, "continuous_cost", 0.0, continuous_cost_check);
  criterion(12, "monte_carlo", 30.0, monte_carlo);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
