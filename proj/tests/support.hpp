#pragma once
// Shared helpers for the test binaries: seeded parameter generators and
// vector comparisons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "impact_game/params.hpp"

namespace testing {

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// max|a - b| / max|b|
inline double rel_diff(std::span<const double> a, std::span<const double> b) {
  const double den = max_abs(b);
  const double num = max_abs_diff(a, b);
  return den > 0.0 ? num / den : num;
}

/// Parameters with rho*T/N in a range that keeps alpha in (0.01, 0.9995).
class ParamGenerator {
 public:
  explicit ParamGenerator(std::uint64_t seed) : rng_(seed) {}

  impact_game::GameParams next(std::size_t n_max = 200) {
    std::uniform_int_distribution<std::size_t> n(2, n_max);
    std::uniform_real_distribution<double> log_rho_t(std::log(0.05), std::log(20.0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> inv(-3.0, 3.0);
    impact_game::GameParams p;
    p.N = n(rng_);
    p.T = 0.5 + 1.5 * u(rng_);
    p.rho = std::exp(log_rho_t(rng_)) / p.T;
    const double pick = u(rng_);
    if (pick < 0.2) {
      p.theta = 0.0;
    } else if (pick < 0.3) {
      p.theta = 0.25;
    } else {
      p.theta = 2.0 * u(rng_) * u(rng_);
    }
    p.x = inv(rng_);
    p.y = inv(rng_);
    return p;
  }

  std::vector<double> vector(std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> v(n);
    for (double& e : v) e = g(rng_);
    return v;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline impact_game::GameParams make_params(double rho, double T, std::size_t N, double theta,
                                           double x = 1.0, double y = 1.0) {
  impact_game::GameParams p;
  p.rho = rho;
  p.T = T;
  p.N = N;
  p.theta = theta;
  p.x = x;
  p.y = y;
  return p;
}

/// Parameters with a prescribed alpha (T = 1).
inline impact_game::GameParams with_alpha(double alpha, std::size_t N, double theta) {
  return make_params(-std::log(alpha) * static_cast<double>(N), 1.0, N, theta);
}

}  // namespace testing
