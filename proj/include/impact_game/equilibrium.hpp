#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "impact_game/params.hpp"

namespace impact_game {

/// Which route produces nu and omega.
enum class Solver { structured, closed_form, dense };

struct OscillationReport {
  double min_component_v = 0.0;
  double min_component_w = 0.0;
  std::size_t sign_changes_v = 0;
  std::size_t sign_changes_w = 0;
};

struct EquilibriumSolution {
  GameParams params;
  std::vector<double> nu;
  std::vector<double> omega;
  std::vector<double> v;  // nu / sum(nu)
  std::vector<double> w;  // omega / sum(omega)
  std::vector<double> xi_star;
  std::vector<double> eta_star;
  double nu_sum = 0.0;
  double omega_sum = 0.0;
  /// max_i |g_i - mean(g)| with g = (Gamma + 2 theta I) xi* + Gamma_tilde eta*.
  double foc_deviation = 0.0;
  /// ||g||_inf, the natural scale for foc_deviation.
  double foc_scale = 0.0;
  OscillationReport oscillation;
};

/// (Gamma + Gamma_tilde + 2 theta I)^{-1} 1 by Thomas elimination on the
/// tridiagonal factor B. Throws NumericalError with the pivot row on breakdown.
std::vector<double> solve_nu(const GameParams& params);

/// (Gamma_tilde^T + 2 theta I)^{-1} 1 by back substitution.
std::vector<double> solve_omega(const GameParams& params);

/// ||(Gamma + Gamma_tilde + 2 theta I) nu - 1||_inf, O(N).
double nu_residual(const GameParams& params, std::span<const double> nu);
/// ||(Gamma - Gamma_tilde + 2 theta I) omega - 1||_inf, O(N).
double omega_residual(const GameParams& params, std::span<const double> omega);

EquilibriumSolution equilibrium_strategies(const GameParams& params,
                                           Solver solver = Solver::structured);

OscillationReport oscillation_report(const GameParams& params);

/// Number of strict sign alternations between consecutive nonzero entries;
/// entries below 1e-13 * ||values||_inf count as zero.
std::size_t count_sign_changes(std::span<const double> values);

/// g = (Gamma + 2 theta I) own + Gamma_tilde other, the gradient of an
/// agent's expected cost in its own strategy.
std::vector<double> cost_gradient(const GameParams& params, std::span<const double> own,
                                  std::span<const double> other);

struct NegativeComponentHit {
  std::size_t N = 0;
  double rhoT = 0.0;
  double min_component = 0.0;
  bool in_v = false;
};

/// Scans N = 2..n_max and each rho*T (T = 1) for the first equilibrium with
/// a v or w component below -threshold.
std::optional<NegativeComponentHit> find_negative_component(double theta, std::size_t n_max,
                                                            std::span<const double> rhoT_values,
                                                            double threshold);

}  // namespace impact_game
