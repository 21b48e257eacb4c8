#include "impact_game/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "impact_game/costs.hpp"
#include "impact_game/parallel.hpp"

namespace impact_game {

std::size_t grid_index(double t, double T, std::size_t N) {
  const double scaled = static_cast<double>(N) * t / T;
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(scaled));
}

RenormalizedPaths::RenormalizedPaths(const EquilibriumSolution& sol)
    : T_(sol.params.T), N_(sol.params.N), v_remaining_(N_ + 1), w_remaining_(N_ + 1) {
  // Remaining mass is summed from the tail so late values keep full
  // relative accuracy.
  double v_tail = sol.v[N_];
  double w_tail = sol.w[N_];
  v_remaining_[N_] = v_tail;
  w_remaining_[N_] = w_tail;
  for (std::size_t n = N_; n-- > 0;) {
    v_tail += sol.v[n];
    w_tail += sol.w[n];
    v_remaining_[n] = v_tail;
    w_remaining_[n] = w_tail;
  }
  v_remaining_[0] = 1.0;
  w_remaining_[0] = 1.0;
}

std::size_t RenormalizedPaths::index(double t) const {
  if (!(t >= 0.0 && t <= T_)) throw ParameterError("renormalized path: t must lie in [0, T]");
  return grid_index(t, T_, N_);
}

double RenormalizedPaths::V(double t) const { return v_remaining_[index(t)]; }
double RenormalizedPaths::W(double t) const { return w_remaining_[index(t)]; }

RenormalizedPaths renormalized_paths(const GameParams& params) {
  return RenormalizedPaths(equilibrium_strategies(params));
}

LimitBundle::LimitBundle(double rho, double T, double x, double y)
    : rho_(rho), T_(T), x_(x), y_(y) {
  if (!(std::isfinite(rho) && rho > 0.0 && std::isfinite(T) && T > 0.0)) {
    throw ParameterError("limit bundle: rho and T must be finite and > 0");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw ParameterError("limit bundle: inventories x, y must be finite");
  }
  const double rT = rho * T;
  const double e3 = std::exp(3.0 * rT);
  const double e6 = std::exp(6.0 * rT);
  const double sum2 = (x + y) * (x + y);
  const double diff2 = (x - y) * (x - y);
  const double prod = x * x - y * y;

  cost_limit_pos =
      sum2 * (36.0 * e6 * (8.0 * rT + 13.0) - 60.0 * e3 - 3.0) /
          (16.0 * std::pow(2.0 * e3 * (3.0 * rT + 5.0) - 1.0, 2)) +
      prod / (2.0 * (rT + 1.0)) + diff2 / (16.0 * std::pow(rT + 1.0, 2));
  cost_limit_even =
      sum2 * (6.0 * e6 + 3.0) / (2.0 * (2.0 * e6 * (3.0 * rT + 5.0) + e3 + 3.0 * rT + 7.0)) +
      prod / (2.0 * (std::exp(-rT) + rT + 1.0));
  cost_limit_odd =
      sum2 * (6.0 * e6 - 3.0) /
          (2.0 * (2.0 * e6 * (3.0 * rT + 5.0) - 3.0 * e3 - 3.0 * rT - 7.0)) +
      prod / (2.0 * (-std::exp(-rT) + rT + 1.0));
  tr_limit = sum2 * 9.0 * std::pow(1.0 + 2.0 * e3, 2) /
                 (8.0 * std::pow(1.0 - 2.0 * e3 * (5.0 + 3.0 * rT), 2)) +
             diff2 / (8.0 * std::pow(rT + 1.0, 2));
  tr_minus_tc_liminf =
      sum2 * 3.0 * std::pow(2.0 * e3 + 1.0, 2) *
      (3.0 * (rT + 3.0) + 2.0 * e6 * (3.0 * rT + 5.0) - e3 * (12.0 * rT + 19.0)) /
      (2.0 * std::pow(1.0 - 2.0 * e3 * (3.0 * rT + 5.0), 2) *
       (3.0 * rT + e3 + 2.0 * e6 * (3.0 * rT + 5.0) + 7.0));
}

void LimitBundle::check(double t) const {
  if (!(t >= 0.0 && t <= T_)) throw ParameterError("limit curve: t must lie in [0, T]");
}

double LimitBundle::v_limit(double t) const {
  check(t);
  const double e3T = std::exp(3.0 * rho_ * T_);
  return (e3T * (6.0 * rho_ * (T_ - t) + 4.0) - 4.0 * std::exp(3.0 * rho_ * t)) /
         (2.0 * e3T * (3.0 * rho_ * T_ + 5.0) - 1.0);
}

double LimitBundle::w_limit(double t) const {
  check(t);
  return (rho_ * (T_ - t) + 1.0) / (rho_ * T_ + 1.0);
}

double LimitBundle::f(double t, double sign) const {
  check(t);
  const double r = rho_;
  const double T = T_;
  const double e3T = std::exp(3.0 * r * T);
  const double e6T = std::exp(6.0 * r * T);
  const double num = sign * 3.0 * std::exp(3.0 * r * (T - t)) +
                     sign * 6.0 * std::exp(3.0 * r * (2.0 * T - t)) +
                     e6T * (6.0 * r * (T - t) + 4.0) + 3.0 * r * (T - t) + 2.0 * e3T +
                     4.0 * std::exp(3.0 * r * t) - 4.0 * std::exp(3.0 * r * (T + t)) + 3.0;
  const double den = 2.0 * e6T * (3.0 * r * T + 5.0) + e3T + 3.0 * r * T + 7.0;
  return num / den;
}

double LimitBundle::g(double t, double sign) const {
  check(t);
  const double r = rho_;
  const double T = T_;
  const double e3T = std::exp(3.0 * r * T);
  const double e6T = std::exp(6.0 * r * T);
  const double num = sign * 3.0 * std::exp(3.0 * r * (T - t)) +
                     sign * 6.0 * std::exp(3.0 * r * (2.0 * T - t)) +
                     e6T * (6.0 * r * (T - t) + 4.0) - 3.0 * r * (T - t) - 2.0 * e3T -
                     4.0 * std::exp(3.0 * r * t) - 4.0 * std::exp(3.0 * r * (T + t)) - 3.0;
  const double den = 2.0 * e6T * (3.0 * r * T + 5.0) - 3.0 * e3T - 3.0 * r * T - 7.0;
  return num / den;
}

double LimitBundle::phi(double t, double sign) const {
  check(t);
  return (1.0 + rho_ * (T_ - t) + sign * std::exp(-rho_ * (T_ - t))) /
         (1.0 + rho_ * T_ + std::exp(-rho_ * T_));
}

double LimitBundle::psi(double t, double sign) const {
  check(t);
  return (1.0 + rho_ * (T_ - t) + sign * std::exp(-rho_ * (T_ - t))) /
         (1.0 + rho_ * T_ - std::exp(-rho_ * T_));
}

double LimitBundle::applicable_cost_limit(double theta, std::size_t N) const {
  if (theta > 0.0) return cost_limit_pos;
  return N % 2 == 0 ? cost_limit_even : cost_limit_odd;
}

LimitBundle limit_bundle(const GameParams& params) {
  return LimitBundle(params.rho, params.T, params.x, params.y);
}

ConvergenceStudy convergence_study(const GameParams& base, std::span<const std::size_t> n_list) {
  if (!std::is_sorted(n_list.begin(), n_list.end())) {
    throw ParameterError("convergence study: N list must be sorted ascending");
  }
  for (std::size_t n : n_list) base.with_N(n).validate();
  const LimitBundle limits = limit_bundle(base);
  ConvergenceStudy study;
  study.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const GameParams p = base.with_N(n_list[idx]);
    const CostBreakdown cb = cost_decomposition(p);
    ConvergenceRow& row = study.rows[idx];
    row.N = p.N;
    row.expected_cost = cb.cost_xi;
    row.limit = limits.applicable_cost_limit(p.theta, p.N);
    row.abs_error = std::abs(cb.cost_xi - row.limit);
    row.tax_revenue = cb.tax_revenue;
    row.taxation_cost = cb.taxation_cost;
  });
  if (!study.rows.empty()) {
    study.error_decreased = study.rows.back().abs_error < study.rows.front().abs_error;
    std::size_t pairs = 0;
    std::size_t good = 0;
    const bool match_parity = base.theta == 0.0;
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
      for (std::size_t j = i + 1; j < study.rows.size(); ++j) {
        if (match_parity && (study.rows[j].N - study.rows[i].N) % 2 != 0) continue;
        ++pairs;
        if (study.rows[j].abs_error <= study.rows[i].abs_error) ++good;
        break;
      }
    }
    study.monotone_fraction = pairs == 0 ? 1.0 : static_cast<double>(good) / pairs;
  }
  return study;
}

ClusterDistance cluster_distance(const GameParams& params, double t) {
  if (params.theta != 0.0) throw ParameterError("cluster distance requires theta = 0");
  const RenormalizedPaths paths = renormalized_paths(params);
  const LimitBundle lim = limit_bundle(params);
  ClusterDistance out;
  out.N = params.N;
  const std::size_t nt = grid_index(t, params.T, params.N);
  out.t_grid = static_cast<double>(nt) * params.T / static_cast<double>(params.N);
  out.V = paths.V(t);
  out.W = paths.W(t);
  const bool even = params.N % 2 == 0;
  const double vp = even ? lim.f_plus(out.t_grid) : lim.g_plus(out.t_grid);
  const double vm = even ? lim.f_minus(out.t_grid) : lim.g_minus(out.t_grid);
  const double wp = even ? lim.phi_plus(out.t_grid) : lim.psi_plus(out.t_grid);
  const double wm = even ? lim.phi_minus(out.t_grid) : lim.psi_minus(out.t_grid);
  out.distance_V = std::min(std::abs(out.V - vp), std::abs(out.V - vm));
  out.distance_W = std::min(std::abs(out.W - wp), std::abs(out.W - wm));
  return out;
}

CostComparison cost_comparison_predicate(double rhoT, double x, double y) {
  const LimitBundle lim(rhoT, 1.0, x, y);
  CostComparison out;
  out.margin = std::min(lim.cost_limit_even, lim.cost_limit_odd) - lim.cost_limit_pos;
  out.holds = out.margin > 0.0;
  return out;
}

double cost_comparison_threshold() { return std::log(4.0 + std::sqrt(62.0) / 2.0) / 3.0; }

}  // namespace impact_game
