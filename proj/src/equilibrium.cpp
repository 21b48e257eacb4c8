#include "impact_game/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "impact_game/closed_form.hpp"
#include "impact_game/core_model.hpp"
#include "impact_game/dense.hpp"
#include "impact_game/kernels/kernels.hpp"

namespace impact_game {

std::vector<double> solve_nu(const GameParams& params) {
  params.validate();
  const std::size_t n = params.size();
  const double a = params.alpha();
  const double k = params.kappa();
  const double oma2 = one_minus_alpha_sq(params);
  const double oma = -std::expm1(-params.rho * params.T / static_cast<double>(params.N));

  // B = (1 - alpha^2)(I + Gamma^{-1}(Gamma_tilde + 2 theta I)) is tridiagonal.
  const double upper = -a * k;
  const double lower = -a * (k - 1.0);
  auto diag = [&](std::size_t i) {
    if (i == 0) return 2.0 * oma2 + k - 1.0;
    if (i + 1 == n) return oma2 + k;
    return oma2 * (2.0 - k) + 2.0 * k - 1.0;
  };
  // (1 - alpha^2) Gamma^{-1} 1 = (1 - alpha)(1, 1 - alpha, ..., 1 - alpha, 1)
  auto rhs = [&](std::size_t i) { return (i == 0 || i + 1 == n) ? oma : oma * oma; };

  std::vector<double> c_prime(n);
  std::vector<double> d_prime(n);
  double pivot = diag(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag(i) - lower * c_prime[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("solve_nu: zero pivot in tridiagonal elimination at row " +
                               std::to_string(i),
                           static_cast<std::ptrdiff_t>(i));
    }
    c_prime[i] = upper / pivot;
    d_prime[i] = (rhs(i) - (i > 0 ? lower * d_prime[i - 1] : 0.0)) / pivot;
  }
  std::vector<double> nu(n);
  nu[n - 1] = d_prime[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) nu[i] = d_prime[i] - c_prime[i] * nu[i + 1];
  return nu;
}

std::vector<double> solve_omega(const GameParams& params) {
  params.validate();
  const std::size_t n = params.size();
  const double a = params.alpha();
  const double k = params.kappa();
  std::vector<double> omega(n);
  double tail = 0.0;  // sum_{j>i} alpha^(j-i) omega_j
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) tail = a * (omega[i + 1] + tail);
    omega[i] = (1.0 - tail) / k;
  }
  return omega;
}

std::size_t count_sign_changes(std::span<const double> values) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double floor = 1e-13 * scale;
  std::size_t changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> cost_gradient(const GameParams& params, std::span<const double> own,
                                  std::span<const double> other) {
  if (own.size() != params.size() || other.size() != params.size()) {
    throw ParameterError("cost_gradient: strategies must have length N+1");
  }
  const double a = params.alpha();
  auto g = gamma_apply(a, own);
  const auto cross = gamma_tilde_apply(a, other);
  kernels::lincomb(1.0, g, 1.0, cross, g);
  kernels::lincomb(1.0, g, 2.0 * params.theta, own, g);
  return g;
}

namespace {

double ones_residual(std::span<const double> lhs) {
  double r = 0.0;
  for (double e : lhs) r = std::max(r, std::abs(e - 1.0));
  return r;
}

void require_length(const GameParams& params, std::size_t n) {
  if (n != params.size()) throw ParameterError("vector must have length N+1");
}

}  // namespace

double nu_residual(const GameParams& params, std::span<const double> nu) {
  require_length(params, nu.size());
  const double a = params.alpha();
  auto lhs = gamma_apply(a, nu);
  const auto lower = gamma_tilde_apply(a, nu);
  kernels::lincomb(1.0, lhs, 1.0, lower, lhs);
  kernels::lincomb(1.0, lhs, 2.0 * params.theta, nu, lhs);
  return ones_residual(lhs);
}

double omega_residual(const GameParams& params, std::span<const double> omega) {
  require_length(params, omega.size());
  // Gamma - Gamma_tilde = Gamma_tilde^T
  auto lhs = gamma_tilde_transpose_apply(params.alpha(), omega);
  kernels::lincomb(1.0, lhs, 2.0 * params.theta, omega, lhs);
  return ones_residual(lhs);
}

namespace {

std::vector<double> normalized(std::span<const double> u, double total) {
  std::vector<double> out(u.begin(), u.end());
  for (double& e : out) e /= total;
  return out;
}

double min_of(std::span<const double> u) { return *std::min_element(u.begin(), u.end()); }

}  // namespace

EquilibriumSolution equilibrium_strategies(const GameParams& params, Solver solver) {
  params.validate();
  EquilibriumSolution sol;
  sol.params = params;
  switch (solver) {
    case Solver::structured:
      sol.nu = solve_nu(params);
      sol.omega = solve_omega(params);
      break;
    case Solver::closed_form:
      sol.nu = nu_closed_form(params);
      sol.omega = omega_closed_form(params);
      break;
    case Solver::dense:
      sol.nu = dense::solve_nu(params);
      sol.omega = dense::solve_omega(params);
      break;
  }
  sol.nu_sum = kernels::sum(sol.nu);
  sol.omega_sum = kernels::sum(sol.omega);
  sol.v = normalized(sol.nu, sol.nu_sum);
  sol.w = normalized(sol.omega, sol.omega_sum);

  const double half_sum = 0.5 * (params.x + params.y);
  const double half_diff = 0.5 * (params.x - params.y);
  sol.xi_star.resize(params.size());
  sol.eta_star.resize(params.size());
  kernels::lincomb(half_sum, sol.v, half_diff, sol.w, sol.xi_star);
  kernels::lincomb(half_sum, sol.v, -half_diff, sol.w, sol.eta_star);

  const auto g = cost_gradient(params, sol.xi_star, sol.eta_star);
  const double mean = kernels::sum(g) / static_cast<double>(g.size());
  for (double gi : g) {
    sol.foc_deviation = std::max(sol.foc_deviation, std::abs(gi - mean));
    sol.foc_scale = std::max(sol.foc_scale, std::abs(gi));
  }

  sol.oscillation.min_component_v = min_of(sol.v);
  sol.oscillation.min_component_w = min_of(sol.w);
  sol.oscillation.sign_changes_v = count_sign_changes(sol.v);
  sol.oscillation.sign_changes_w = count_sign_changes(sol.w);
  return sol;
}

OscillationReport oscillation_report(const GameParams& params) {
  return equilibrium_strategies(params).oscillation;
}

std::optional<NegativeComponentHit> find_negative_component(double theta, std::size_t n_max,
                                                            std::span<const double> rhoT_values,
                                                            double threshold) {
  for (double rt : rhoT_values) {
    for (std::size_t n = 2; n <= n_max; ++n) {
      GameParams p;
      p.rho = rt;
      p.T = 1.0;
      p.N = n;
      p.theta = theta;
      const OscillationReport rep = oscillation_report(p);
      const double m = std::min(rep.min_component_v, rep.min_component_w);
      if (m < -threshold) {
        return NegativeComponentHit{n, rt, m, rep.min_component_v <= rep.min_component_w};
      }
    }
  }
  return std::nullopt;
}

}  // namespace impact_game
