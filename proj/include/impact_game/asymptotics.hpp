#pragma once
// High-frequency limits of the discrete equilibrium. For theta > 0 the
// limits do not depend on theta; for theta = 0 strategies and costs keep
// oscillating between two cluster points selected by the parity of N.

#include <cstddef>
#include <span>
#include <vector>

#include "impact_game/equilibrium.hpp"
#include "impact_game/params.hpp"

namespace impact_game {

/// ceil(N t / T), snapped to the nearest integer when within 1e-9 of it so
/// that t = k T / N maps to k.
std::size_t grid_index(double t, double T, std::size_t N);

/// Remaining-inventory step curves V(t) = 1 - sum_{k<=n_t} v_k and the same
/// for W. At t = T only the terminal trade v_{N+1} remains.
class RenormalizedPaths {
 public:
  explicit RenormalizedPaths(const EquilibriumSolution& sol);
  double V(double t) const;
  double W(double t) const;
  double T() const { return T_; }
  std::size_t N() const { return N_; }

 private:
  double T_;
  std::size_t N_;
  std::vector<double> v_remaining_;  // 1 - sum_{k<=n} v_k, n = 0..N
  std::vector<double> w_remaining_;
  std::size_t index(double t) const;
};

RenormalizedPaths renormalized_paths(const GameParams& params);

/// Closed-form limits for one (rho, T, x, y).
class LimitBundle {
 public:
  LimitBundle(double rho, double T, double x, double y);

  double rho() const { return rho_; }
  double T() const { return T_; }

  // theta > 0 limit curves on [0, T].
  double v_limit(double t) const;
  double w_limit(double t) const;
  // theta = 0 cluster curves: f for even N, g for odd N (V); phi for even N,
  // psi for odd N (W).
  double f_plus(double t) const { return f(t, 1.0); }
  double f_minus(double t) const { return f(t, -1.0); }
  double g_plus(double t) const { return g(t, 1.0); }
  double g_minus(double t) const { return g(t, -1.0); }
  double phi_plus(double t) const { return phi(t, 1.0); }
  double phi_minus(double t) const { return phi(t, -1.0); }
  double psi_plus(double t) const { return psi(t, 1.0); }
  double psi_minus(double t) const { return psi(t, -1.0); }

  double cost_limit_pos = 0.0;
  double cost_limit_even = 0.0;
  double cost_limit_odd = 0.0;
  double tr_limit = 0.0;
  double tr_minus_tc_liminf = 0.0;

  /// Limit of the agent-1 cost applicable to this theta and parity of N.
  double applicable_cost_limit(double theta, std::size_t N) const;

  friend bool operator==(const LimitBundle&, const LimitBundle&) = default;

 private:
  double rho_, T_, x_, y_;
  void check(double t) const;
  double f(double t, double sign) const;
  double g(double t, double sign) const;
  double phi(double t, double sign) const;
  double psi(double t, double sign) const;
};

/// Limits for params' (rho, T, x, y); N and theta are ignored.
LimitBundle limit_bundle(const GameParams& params);

struct ConvergenceRow {
  std::size_t N = 0;
  double expected_cost = 0.0;  // agent 1
  double limit = 0.0;
  double abs_error = 0.0;
  double tax_revenue = 0.0;
  double taxation_cost = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Error at the largest N below the error at the smallest N.
  bool error_decreased = false;
  /// Fraction of consecutive pairs (same parity when theta = 0) whose error
  /// does not increase.
  double monotone_fraction = 0.0;
};

/// Solves the game for every N in n_list (ascending), in parallel.
ConvergenceStudy convergence_study(const GameParams& base, std::span<const std::size_t> n_list);

struct ClusterDistance {
  std::size_t N = 0;
  double t_grid = 0.0;  // n_t T / N, where the limit curves are evaluated
  double V = 0.0;
  double W = 0.0;
  double distance_V = 0.0;  // to {f+, f-} (even N) or {g+, g-} (odd N)
  double distance_W = 0.0;  // to {phi+, phi-} or {psi+, psi-}
};

/// theta = 0 only; throws ParameterError otherwise.
ClusterDistance cluster_distance(const GameParams& params, double t);

struct CostComparison {
  bool holds = false;  // cost_limit_pos < min(cost_limit_even, cost_limit_odd)
  double margin = 0.0;  // min(even, odd) - pos
};

CostComparison cost_comparison_predicate(double rhoT, double x, double y);

/// log(4 + sqrt(62)/2) / 3: above it, equal inventories always gain from a
/// positive transaction cost in the limit.
double cost_comparison_threshold();

}  // namespace impact_game
