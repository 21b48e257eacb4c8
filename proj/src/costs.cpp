#include "impact_game/costs.hpp"

#include "impact_game/core_model.hpp"
#include "impact_game/kernels/kernels.hpp"

namespace impact_game {

double expected_cost(const GameParams& params, std::span<const double> xi,
                     std::span<const double> eta) {
  params.validate();
  if (xi.size() != params.size() || eta.size() != params.size()) {
    throw ParameterError("expected_cost: strategies must have length N+1");
  }
  const double a = params.alpha();
  const auto g_xi = gamma_apply(a, xi);
  const auto gt_eta = gamma_tilde_apply(a, eta);
  return 0.5 * kernels::dot(xi, g_xi) + params.theta * kernels::dot(xi, xi) +
         kernels::dot(xi, gt_eta);
}

double tax_revenue(double theta, std::span<const double> xi, std::span<const double> eta) {
  return theta * (kernels::dot(xi, xi) + kernels::dot(eta, eta));
}

namespace {

double total_equilibrium_cost(const EquilibriumSolution& sol) {
  return expected_cost(sol.params, sol.xi_star, sol.eta_star) +
         expected_cost(sol.params, sol.eta_star, sol.xi_star);
}

}  // namespace

CostBreakdown cost_decomposition(const EquilibriumSolution& sol) {
  const GameParams& p = sol.params;
  CostBreakdown out;
  out.cost_xi = expected_cost(p, sol.xi_star, sol.eta_star);
  out.cost_eta = expected_cost(p, sol.eta_star, sol.xi_star);
  out.total_cost = out.cost_xi + out.cost_eta;
  out.tax_revenue = tax_revenue(p.theta, sol.xi_star, sol.eta_star);

  const double a = p.alpha();
  const double s_nu = sol.nu_sum;
  const double s_om = sol.omega_sum;
  const auto gt_nu = gamma_tilde_apply(a, sol.nu);
  const auto gtt_nu = gamma_tilde_transpose_apply(a, sol.nu);
  const auto gt_om = gamma_tilde_apply(a, sol.omega);
  const double nu_gt_nu = kernels::dot(sol.nu, gt_nu);
  const double om_skew_nu = kernels::dot(sol.omega, gt_nu) - kernels::dot(sol.omega, gtt_nu);
  const double om_gt_om = kernels::dot(sol.omega, gt_om);

  const double sum = p.x + p.y;
  const double diff = p.x - p.y;
  const double prod = p.x * p.x - p.y * p.y;
  auto& t = out.decomposition_terms;
  t[0] = sum * sum / s_nu;
  t[1] = prod * (s_nu + s_om) / (s_nu * s_om);
  t[2] = diff * diff / s_om;
  t[3] = (sum / s_nu) * (sum / s_nu) * nu_gt_nu;
  t[4] = prod / (s_nu * s_om) * om_skew_nu;
  t[5] = -(diff / s_om) * (diff / s_om) * om_gt_om;
  out.decomposition_cost_xi = kernels::sum(t) / 8.0;

  if (p.theta == 0.0) {
    out.taxation_cost = 0.0;
  } else {
    const EquilibriumSolution free = equilibrium_strategies(p.with_theta(0.0));
    out.taxation_cost = out.total_cost - total_equilibrium_cost(free);
  }
  return out;
}

CostBreakdown cost_decomposition(const GameParams& params) {
  return cost_decomposition(equilibrium_strategies(params));
}

TaxMetrics tax_metrics(const GameParams& params) {
  const EquilibriumSolution taxed = equilibrium_strategies(params);
  TaxMetrics m;
  m.tax_revenue = tax_revenue(params.theta, taxed.xi_star, taxed.eta_star);
  m.total_cost = total_equilibrium_cost(taxed);
  m.total_cost_free = params.theta == 0.0
                          ? m.total_cost
                          : total_equilibrium_cost(equilibrium_strategies(params.with_theta(0.0)));
  m.taxation_cost = m.total_cost - m.total_cost_free;
  return m;
}

}  // namespace impact_game
