#pragma once
// Independent oracle for the continuous-time cost functional: adaptive
// Gauss-Kronrod quadrature over the strategy densities, with the boundary
// atoms handled as point masses.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "impact_game/continuous_time.hpp"

namespace testing {

using boost::math::quadrature::gauss_kronrod;

inline double gk(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13);
}

// Liquidation cost by direct numerical quadrature over the densities, with
// the atoms at 0 and T handled as point masses.
inline double quadrature_cost(const impact_game::BVStrategy& X, const impact_game::BVStrategy& Y,
                              double rho, double theta) {
  const double T = X.T;
  auto kern = [rho](double t, double s) { return std::exp(-rho * std::abs(t - s)); };
  auto xd = [&](double s) { return X.density(s); };
  auto yd = [&](double s) { return Y.density(s); };
  const double atoms[2][2] = {{0.0, X.jump_at_0}, {T, X.jump_at_T}};

  double self = 0.0;
  for (const auto& a : atoms) {
    for (const auto& b : atoms) self += a[1] * b[1] * kern(a[0], b[0]);
    self += 2.0 * a[1] * gk([&](double s) { return kern(a[0], s) * xd(s); }, 0.0, T);
  }
  self += gk(
      [&](double t) {
        const auto inner = [&](double s) { return kern(t, s) * xd(s); };
        return xd(t) * (gk(inner, 0.0, t) + gk(inner, t, T));
      },
      0.0, T);

  auto past = [&](double t) {
    return Y.jump_at_0 * std::exp(-rho * t) +
           gk([&](double s) { return std::exp(-rho * (t - s)) * yd(s); }, 0.0, t);
  };
  const double cross = X.jump_at_T * past(T) + gk([&](double t) { return xd(t) * past(t); }, 0.0, T);
  const double jumps = 0.5 * (X.jump_at_0 * Y.jump_at_0 + X.jump_at_T * Y.jump_at_T) +
                       theta * (X.jump_at_0 * X.jump_at_0 + X.jump_at_T * X.jump_at_T);
  return 0.5 * self + cross + jumps;
}

}  // namespace testing
