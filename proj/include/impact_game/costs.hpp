#pragma once

#include <array>
#include <span>

#include "impact_game/equilibrium.hpp"
#include "impact_game/params.hpp"

namespace impact_game {

/// Expected cost of xi against eta, 1/2 xi'(Gamma + 2 theta I) xi + xi' Gamma_tilde eta.
/// Martingale price terms are dropped; they vanish in expectation.
double expected_cost(const GameParams& params, std::span<const double> xi,
                     std::span<const double> eta);

struct CostBreakdown {
  double cost_xi = 0.0;
  double cost_eta = 0.0;
  double total_cost = 0.0;
  double tax_revenue = 0.0;
  double taxation_cost = 0.0;
  /// Agent-1 cost as eight times the sum of six terms built from
  /// 1'nu, 1'omega, nu'Gt nu, omega'(Gt - Gt')nu and omega'Gt omega:
  ///   (x+y)^2/S_nu, (x^2-y^2)(S_nu+S_om)/(S_nu S_om), (x-y)^2/S_om,
  ///   ((x+y)/S_nu)^2 nu'Gt nu, (x^2-y^2)/(S_nu S_om) om'(Gt-Gt')nu,
  ///   -((x-y)/S_om)^2 om'Gt om.
  std::array<double, 6> decomposition_terms{};
  /// Sum of the terms divided by eight; equals cost_xi up to roundoff.
  double decomposition_cost_xi = 0.0;
};

/// Costs at the equilibrium of `params`, including the taxation cost,
/// which needs a second solve at theta = 0.
CostBreakdown cost_decomposition(const GameParams& params);
CostBreakdown cost_decomposition(const EquilibriumSolution& sol);

struct TaxMetrics {
  double tax_revenue = 0.0;
  double taxation_cost = 0.0;
  double total_cost = 0.0;       // C_N(theta)
  double total_cost_free = 0.0;  // C_N(0)
};

TaxMetrics tax_metrics(const GameParams& params);

/// theta (xi'xi + eta'eta).
double tax_revenue(double theta, std::span<const double> xi, std::span<const double> eta);

}  // namespace impact_game
