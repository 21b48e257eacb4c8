#include "impact_game/continuous_time.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "impact_game/params.hpp"

namespace impact_game {

double exp_integral(double rate, double a, double b) {
  if (rate == 0.0) return b - a;
  return std::exp(rate * a) * std::expm1(rate * (b - a)) / rate;
}

double ExpSum::operator()(double t) const {
  double s = 0.0;
  for (const ExpTerm& e : terms) s += e.coef * std::exp(e.rate * t);
  return s;
}

double ExpSum::integral(double a, double b) const {
  double s = 0.0;
  for (const ExpTerm& e : terms) s += e.coef * exp_integral(e.rate, a, b);
  return s;
}

ExpSum ExpSum::scaled(double s) const {
  ExpSum out = *this;
  for (ExpTerm& e : out.terms) e.coef *= s;
  return out;
}

ExpSum ExpSum::plus(const ExpSum& other) const {
  ExpSum out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

double BVStrategy::value(double t) const {
  if (!(t >= 0.0 && t <= T)) throw ParameterError("strategy value: t must lie in [0, T]");
  double v = initial_value + jump_at_0 + density.integral(0.0, t);
  if (t == T) v += jump_at_T;
  return v;
}

double BVStrategy::terminal_residual() const {
  return initial_value + jump_at_0 + density.integral(0.0, T) + jump_at_T;
}

BVStrategy BVStrategy::scaled(double s) const {
  BVStrategy out = *this;
  out.initial_value *= s;
  out.jump_at_0 *= s;
  out.jump_at_T *= s;
  out.density = density.scaled(s);
  return out;
}

BVStrategy BVStrategy::plus(const BVStrategy& other) const {
  if (other.T != T) throw ParameterError("strategies must share the horizon T");
  BVStrategy out = *this;
  out.initial_value += other.initial_value;
  out.jump_at_0 += other.jump_at_0;
  out.jump_at_T += other.jump_at_T;
  out.density = density.plus(other.density);
  return out;
}

ContinuousEquilibrium continuous_equilibrium(double rho, double T, double x, double y) {
  if (!(std::isfinite(rho) && rho > 0.0 && std::isfinite(T) && T > 0.0)) {
    throw ParameterError("continuous equilibrium: rho and T must be finite and > 0");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw ParameterError("continuous equilibrium: inventories x, y must be finite");
  }
  const double rT = rho * T;
  const double e3 = std::exp(3.0 * rT);
  const double denom = 2.0 * e3 * (3.0 * rT + 5.0) - 1.0;

  // V: starts at 1, jumps to its formula value at 0, reaches 0 at T without
  // a terminal jump.
  BVStrategy v;
  v.T = T;
  v.initial_value = 1.0;
  v.jump_at_0 = (e3 * (6.0 * rT + 4.0) - 4.0) / denom - 1.0;
  v.jump_at_T = 0.0;
  v.density.terms = {{-6.0 * rho * e3 / denom, 0.0}, {-12.0 * rho / denom, 3.0 * rho}};

  // W: no jump at 0, linear decay to 1/(rho T + 1), jump to 0 at T.
  BVStrategy w;
  w.T = T;
  w.initial_value = 1.0;
  w.jump_at_0 = 0.0;
  w.jump_at_T = -1.0 / (rT + 1.0);
  w.density.terms = {{-rho / (rT + 1.0), 0.0}};

  const double hs = 0.5 * (x + y);
  const double hd = 0.5 * (x - y);
  return {v.scaled(hs).plus(w.scaled(hd)), v.scaled(hs).plus(w.scaled(-hd))};
}

namespace {

double jump_at(const BVStrategy& s, double t) {
  if (t == 0.0) return s.jump_at_0;
  if (t == s.T) return s.jump_at_T;
  return 0.0;
}

// int_[0,T] e^{-rho|t-s|} dZ_s
double two_sided_potential(const BVStrategy& z, double rho, double t) {
  const double T = z.T;
  double p = z.jump_at_0 * std::exp(-rho * t) + z.jump_at_T * std::exp(-rho * (T - t));
  for (const ExpTerm& e : z.density.terms) {
    p += e.coef * (std::exp(-rho * t) * exp_integral(e.rate + rho, 0.0, t) +
                   std::exp(rho * t) * exp_integral(e.rate - rho, t, T));
  }
  return p;
}

// int_[0,t) e^{-rho(t-s)} dZ_s
double past_potential(const BVStrategy& z, double rho, double t) {
  if (t == 0.0) return 0.0;
  double p = z.jump_at_0 * std::exp(-rho * t);
  for (const ExpTerm& e : z.density.terms) {
    p += e.coef * std::exp(-rho * t) * exp_integral(e.rate + rho, 0.0, t);
  }
  return p;
}

void require_regular(const ExpSum& d, double rho) {
  for (const ExpTerm& e : d.terms) {
    if (std::abs(std::abs(e.rate) - rho) <= 1e-12 * rho) {
      throw ParameterError("liquidation cost: density rate equal to +-rho is not supported");
    }
  }
}

// The two potentials as exponential sums in t on (0, T).
ExpSum two_sided_potential_sum(const BVStrategy& z, double rho) {
  ExpSum p;
  p.terms.push_back({z.jump_at_0, -rho});
  p.terms.push_back({z.jump_at_T * std::exp(-rho * z.T), rho});
  for (const ExpTerm& e : z.density.terms) {
    const double up = e.rate + rho;
    const double dn = e.rate - rho;
    p.terms.push_back({e.coef / up, e.rate});
    p.terms.push_back({-e.coef / up, -rho});
    p.terms.push_back({e.coef * std::exp(dn * z.T) / dn, rho});
    p.terms.push_back({-e.coef / dn, e.rate});
  }
  return p;
}

ExpSum past_potential_sum(const BVStrategy& z, double rho) {
  ExpSum p;
  p.terms.push_back({z.jump_at_0, -rho});
  for (const ExpTerm& e : z.density.terms) {
    const double up = e.rate + rho;
    p.terms.push_back({e.coef / up, e.rate});
    p.terms.push_back({-e.coef / up, -rho});
  }
  return p;
}

double product_integral(const ExpSum& a, const ExpSum& b, double T) {
  double s = 0.0;
  for (const ExpTerm& u : a.terms) {
    for (const ExpTerm& v : b.terms) s += u.coef * v.coef * exp_integral(u.rate + v.rate, 0.0, T);
  }
  return s;
}

}  // namespace

double fredholm_lhs(const BVStrategy& own, const BVStrategy& other, double rho, double theta,
                    double t) {
  if (!(t >= 0.0 && t <= own.T)) throw ParameterError("fredholm: t must lie in [0, T]");
  return two_sided_potential(own, rho, t) + past_potential(other, rho, t) +
         0.5 * jump_at(other, t) + 2.0 * theta * jump_at(own, t);
}

FredholmReport fredholm_residual(double rho, double T, double x, double y, double theta,
                                 std::size_t n_grid) {
  if (n_grid < 16) throw ParameterError("fredholm: n_grid must be >= 16");
  if (!(std::isfinite(theta) && theta >= 0.0)) {
    throw ParameterError("fredholm: theta must be finite and >= 0");
  }
  const ContinuousEquilibrium eq = continuous_equilibrium(rho, T, x, y);
  std::vector<double> lhs1(n_grid);
  std::vector<double> lhs2(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double t = i + 1 == n_grid ? T : T * static_cast<double>(i) / (n_grid - 1);
    lhs1[i] = fredholm_lhs(eq.X, eq.Y, rho, theta, t);
    lhs2[i] = fredholm_lhs(eq.Y, eq.X, rho, theta, t);
  }
  FredholmReport rep;
  rep.theta = theta;
  rep.constant_estimate_agent1 = std::accumulate(lhs1.begin(), lhs1.end(), 0.0) / n_grid;
  rep.constant_estimate_agent2 = std::accumulate(lhs2.begin(), lhs2.end(), 0.0) / n_grid;
  for (std::size_t i = 0; i < n_grid; ++i) {
    rep.max_abs_deviation = std::max({rep.max_abs_deviation,
                                      std::abs(lhs1[i] - rep.constant_estimate_agent1),
                                      std::abs(lhs2[i] - rep.constant_estimate_agent2)});
  }
  const double rT = rho * T;
  const double sym = 18.0 * (x + y) / (10.0 + 6.0 * rT - std::exp(-3.0 * rT));
  const double anti = (x - y) / (rT + 1.0);
  rep.reference_constant_agent1 = -0.5 * (anti + sym);
  rep.reference_constant_agent2 = -0.5 * (-anti + sym);
  return rep;
}

double liquidation_cost(const BVStrategy& X, const BVStrategy& Y, double rho, double theta) {
  if (X.T != Y.T) throw ParameterError("liquidation cost: strategies must share T");
  require_regular(X.density, rho);
  require_regular(Y.density, rho);
  const double T = X.T;

  const double self = X.jump_at_0 * two_sided_potential(X, rho, 0.0) +
                      X.jump_at_T * two_sided_potential(X, rho, T) +
                      product_integral(two_sided_potential_sum(X, rho), X.density, T);
  // The atom of X at 0 sees no earlier trades of Y.
  const double cross = X.jump_at_T * past_potential(Y, rho, T) +
                       product_integral(past_potential_sum(Y, rho), X.density, T);
  const double jumps_xy = X.jump_at_0 * Y.jump_at_0 + X.jump_at_T * Y.jump_at_T;
  const double jumps_xx = X.jump_at_0 * X.jump_at_0 + X.jump_at_T * X.jump_at_T;
  return 0.5 * self + cross + 0.5 * jumps_xy + theta * jumps_xx;
}

double continuous_cost(double rho, double T, double x, double y) {
  const ContinuousEquilibrium eq = continuous_equilibrium(rho, T, x, y);
  return liquidation_cost(eq.X, eq.Y, rho, 0.25);
}

std::vector<double> discretize_strategy(const BVStrategy& X, std::size_t N) {
  if (N < 2) throw ParameterError("discretize: N must be >= 2");
  std::vector<double> out(N + 1);
  double prev = X.initial_value;
  for (std::size_t k = 0; k <= N; ++k) {
    const double t = k == N ? X.T : X.T * static_cast<double>(k) / static_cast<double>(N);
    const double cur = X.value(t);
    out[k] = prev - cur;
    prev = cur;
  }
  return out;
}

}  // namespace impact_game
