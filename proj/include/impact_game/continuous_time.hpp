#pragma once
// Continuous-time strategies with a jump at 0, a jump at T and a smooth
// density in between. Densities are finite sums c * exp(r t), which is
// closed under everything the cost functional and the first-order condition
// need, so every Stieltjes integral below is evaluated in closed form.

#include <cstddef>
#include <vector>

namespace impact_game {

struct ExpTerm {
  double coef = 0.0;
  double rate = 0.0;
};

/// t -> sum_k coef_k exp(rate_k t).
struct ExpSum {
  std::vector<ExpTerm> terms;

  double operator()(double t) const;
  /// Exact integral over [a, b].
  double integral(double a, double b) const;
  ExpSum scaled(double s) const;
  ExpSum plus(const ExpSum& other) const;
};

/// integral_a^b exp(rate s) ds, accurate for small |rate (b - a)|.
double exp_integral(double rate, double a, double b);

/// A deterministic strategy on [0, T] holding `initial_value` just before 0.
/// Jumps and density are signed changes of the position (negative when
/// selling); the position is liquidated when initial_value + jump_at_0 +
/// integral of density + jump_at_T = 0.
struct BVStrategy {
  double T = 1.0;
  double initial_value = 0.0;
  double jump_at_0 = 0.0;
  double jump_at_T = 0.0;
  ExpSum density;

  /// Position at t in [0, T] (right-continuous, so value(T) is after the
  /// terminal jump).
  double value(double t) const;
  /// initial + jumps + integral of density; 0 for a liquidating strategy.
  double terminal_residual() const;
  BVStrategy scaled(double s) const;
  BVStrategy plus(const BVStrategy& other) const;
};

struct ContinuousEquilibrium {
  BVStrategy X;  // agent with initial position x
  BVStrategy Y;  // agent with initial position y
};

/// Equilibrium at the critical cost level 1/4. Throws ParameterError for
/// rho, T not finite and positive.
ContinuousEquilibrium continuous_equilibrium(double rho, double T, double x, double y);

/// Left side of the first-order condition for `own` facing `other`:
///   int_[0,T] e^{-rho|t-s|} d own_s + int_[0,t) e^{-rho(t-s)} d other_s
///   + other's jump at t / 2 + 2 theta own's jump at t.
double fredholm_lhs(const BVStrategy& own, const BVStrategy& other, double rho, double theta,
                    double t);

struct FredholmReport {
  double theta = 0.0;
  double constant_estimate_agent1 = 0.0;  // mean over the grid
  double constant_estimate_agent2 = 0.0;
  double max_abs_deviation = 0.0;         // over both agents
  double reference_constant_agent1 = 0.0;
  double reference_constant_agent2 = 0.0;
};

/// Evaluates the first-order condition of the critical-level equilibrium at
/// n_grid equispaced points of [0, T] (both endpoints included) with cost
/// level theta. Requires n_grid >= 16.
FredholmReport fredholm_residual(double rho, double T, double x, double y, double theta,
                                 std::size_t n_grid);

/// Liquidation cost of X given Y:
///   1/2 int int e^{-rho|t-s|} dX dX + int_[0,T] int_[0,t) e^{-rho(t-s)} dY dX
///   + 1/2 sum dX dY + theta sum (dX)^2  (sums over the jump times).
/// Throws ParameterError if a density rate equals +-rho (not representable).
double liquidation_cost(const BVStrategy& X, const BVStrategy& Y, double rho, double theta);

/// Cost of the first agent in the critical-level equilibrium.
double continuous_cost(double rho, double T, double x, double y);

/// (N+1) sold quantities on the grid kT/N: entry 0 is X_{0-} - X_0 and entry
/// k is X_{t_{k-1}} - X_{t_k}, so the entries sum to X_{0-} for a liquidating
/// strategy.
std::vector<double> discretize_strategy(const BVStrategy& X, std::size_t N);

}  // namespace impact_game
