#include "impact_game/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "impact_game/core_model.hpp"

namespace impact_game {

namespace {

constexpr double kKappaOneBand = 1e-9;

double ipow(double base, std::size_t n) { return std::pow(base, static_cast<double>(n)); }

}  // namespace

// m_plus - alpha*c with c in {kappa, kappa-1}. The direct form (s' + R)/2
// cancels when alpha -> 1; the conjugate form uses
// R^2 - s'^2 = 4 alpha c (1-alpha)(1 + kappa + (2-kappa) alpha).
double ClosedFormCoefficients::one_minus_decay(double c) const {
  const double s = (1.0 - alpha * alpha) * (2.0 - kappa) + 2.0 * kappa - 1.0;
  const double shifted = s - 2.0 * alpha * c;
  double gap;
  if (shifted >= 0.0) {
    gap = 0.5 * (shifted + R);
  } else {
    gap = 2.0 * alpha * c * one_minus_alpha * (1.0 + kappa + (2.0 - kappa) * alpha) / (R - shifted);
  }
  return gap / m_plus;
}

double ClosedFormCoefficients::one_minus_upper_decay() const { return one_minus_decay(kappa); }
double ClosedFormCoefficients::one_minus_lower_decay() const {
  return one_minus_decay(kappa - 1.0);
}

ClosedFormCoefficients coefficients(const GameParams& params) {
  params.validate();
  ClosedFormCoefficients c;
  const double a = params.alpha();
  const double k = params.kappa();
  const double a2 = a * a;
  const double oma2 = one_minus_alpha_sq(params);
  c.alpha = a;
  c.kappa = k;
  c.one_minus_alpha = -std::expm1(-params.rho * params.T / static_cast<double>(params.N));

  double radicand = a2 * a2 * (k - 2.0) * (k - 2.0) - 2.0 * a2 * (2.0 + (k - 1.0) * k) +
                    (k + 1.0) * (k + 1.0);
  if (radicand < 0.0) {
    if (radicand < -1e-14) {
      throw NumericalError("closed form: negative radicand " + std::to_string(radicand));
    }
    radicand = 0.0;
  }
  c.R = std::sqrt(radicand);
  // 1 + alpha^2 (kappa-2) + kappa, written to stay accurate as alpha -> 1
  const double s = oma2 * (2.0 - k) + 2.0 * k - 1.0;
  c.m_plus = 0.5 * (s + c.R);
  // Product of the roots is alpha^2 kappa (kappa-1); avoids cancellation.
  c.m_minus = a2 * k * (k - 1.0) / c.m_plus;
  const double two_r = 2.0 * c.R;
  const double cs = oma2 * (k + 2.0) - 1.0;
  const double ds = 1.0 + oma2 * k;
  c.c_plus = (cs + c.R) / two_r;
  c.c_minus = (-cs + c.R) / two_r;
  c.d_plus = (ds + c.R) / two_r;
  c.d_minus = (-ds + c.R) / two_r;
  return c;
}

double ScaledSequences::delta(std::size_t k) const {
  return std::exp(static_cast<double>(k) * log_scale) * delta_hat.at(k);
}

double ScaledSequences::phi(std::size_t k) const {
  const std::size_t top = phi_hat.size() - 1;  // N + 2
  if (k < 2 || k > top) throw ParameterError("phi index must lie in 2..N+2");
  return std::exp(static_cast<double>(top - k) * log_scale) * phi_hat[k];
}

ScaledSequences delta_phi_sequences(const GameParams& params) {
  const ClosedFormCoefficients c = coefficients(params);
  const std::size_t n = params.N;
  const double r = c.ratio();
  ScaledSequences seq;
  seq.log_scale = std::log(c.m_plus);
  seq.delta_hat.resize(n + 2);
  seq.phi_hat.assign(n + 3, 0.0);
  for (std::size_t k = 0; k <= n; ++k) seq.delta_hat[k] = c.c_plus + c.c_minus * ipow(r, k);
  // The last row of B has its own diagonal entry, so the closed form stops
  // at N and the final minor comes from one recursion step.
  const double last_diag = one_minus_alpha_sq(params) + c.kappa;
  seq.delta_hat[n + 1] =
      (last_diag * seq.delta_hat[n] - c.m_minus * seq.delta_hat[n - 1]) / c.m_plus;
  for (std::size_t k = 2; k <= n + 2; ++k) {
    seq.phi_hat[k] = c.d_plus + c.d_minus * ipow(r, n + 2 - k);
  }
  return seq;
}

BInverse::BInverse(const GameParams& params)
    : n_(params.N), coef_(impact_game::coefficients(params)), seq_(delta_phi_sequences(params)) {
  const double last = seq_.delta_hat[n_ + 1];
  if (!(std::isfinite(last) && last != 0.0)) {
    throw NumericalError("closed form: vanishing determinant of B", static_cast<long>(n_ + 1));
  }
  prefactor_ = 1.0 / (coef_.m_plus * last);
}

double BInverse::entry(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > n_ + 1 || j > n_ + 1) {
    throw ParameterError("B inverse indices must lie in 1..N+1");
  }
  if (i <= j) {
    return ipow(coef_.upper_decay(), j - i) * seq_.delta_hat[i - 1] * seq_.phi_hat[j + 1] *
           prefactor_;
  }
  return ipow(coef_.lower_decay(), i - j) * seq_.delta_hat[j - 1] * seq_.phi_hat[i + 1] *
         prefactor_;
}

double b_inverse_entry(const GameParams& params, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > params.N + 1 || j > params.N + 1) {
    throw ParameterError("B inverse indices must lie in 1..N+1");
  }
  return BInverse(params).entry(i, j);
}

double geometric_sum(double x, double one_minus_x, std::size_t n) {
  if (n == 0) return 0.0;
  if (one_minus_x == 0.0) return static_cast<double>(n);
  if (x > 0.0 && one_minus_x < 0.5) {
    const double log_x = std::log1p(-one_minus_x);
    return -std::expm1(static_cast<double>(n) * log_x) / one_minus_x;
  }
  return (1.0 - ipow(x, n)) / one_minus_x;
}

std::vector<double> omega_closed_form(const GameParams& params) {
  params.validate();
  const double a = params.alpha();
  const double k = params.kappa();
  const double one_minus_a = -std::expm1(-params.rho * params.T / static_cast<double>(params.N));
  const double decay = a * (k - 1.0) / k;
  const double denom = k * (k - a * (k - 1.0));
  const std::size_t n = params.N;
  std::vector<double> out(n + 1);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    out[i - 1] = (one_minus_a * k + a * ipow(decay, n + 1 - i)) / denom;
  }
  return out;
}

namespace {

std::vector<double> nu_kappa_one(const GameParams& params) {
  const double a = params.alpha();
  const double one_minus_a = -std::expm1(-params.rho * params.T / static_cast<double>(params.N));
  const double two_minus_a2 = 2.0 - a * a;
  const double q = a / two_minus_a2;
  const double one_minus_a2 = one_minus_a * (1.0 + a);
  const std::size_t n = params.N;
  std::vector<double> out(n + 1);
  const double lead = 1.0 / (2.0 + a);
  out[0] = lead * (1.0 + 0.5 * two_minus_a2 * ipow(q, n + 1));
  for (std::size_t i = 2; i <= n + 1; ++i) {
    out[i - 1] = lead * (one_minus_a + one_minus_a2 * ipow(q, n + 2 - i));
  }
  return out;
}

// nu = B^{-1} u with u = (1-alpha) (1, 1-alpha, ..., 1-alpha, 1). Row i splits
// into the strictly lower part (decay a, weights delta_hat) and the upper
// part (decay b, weights phi_hat); every inner sum is a pair of geometric
// series. With r = m_minus/m_plus one has r = a*b, which turns each mixed
// series into a pure one.
std::vector<double> nu_general(const GameParams& params) {
  const BInverse binv(params);
  const ClosedFormCoefficients& c = binv.coefficients();
  const ScaledSequences& seq = binv.sequences();
  const std::size_t n = params.N;
  const double oma = c.one_minus_alpha;
  const double a = c.lower_decay();
  const double b = c.upper_decay();
  const double r = c.ratio();
  const double one_minus_a = c.one_minus_lower_decay();
  const double one_minus_b = c.one_minus_upper_decay();
  const double pref = 1.0 / (c.m_plus * seq.delta_hat[n + 1]);

  // sum_{p<m} a^(m-1-p) r^p = a^(m-1) G(b, m);  sum_{p<m} b^(m-1-p) r^p = b^(m-1) G(a, m)
  auto mixed_a = [&](std::size_t m) {
    return m == 0 ? 0.0 : ipow(a, m - 1) * geometric_sum(b, one_minus_b, m);
  };
  auto mixed_b = [&](std::size_t m) {
    return m == 0 ? 0.0 : ipow(b, m - 1) * geometric_sum(a, one_minus_a, m);
  };
  // sum_{q<m} b^q (d_plus + d_minus r^(m-q)), the phi_hat-weighted upper run.
  auto upper_run = [&](std::size_t m) {
    return c.d_plus * geometric_sum(b, one_minus_b, m) + c.d_minus * r * mixed_b(m);
  };

  std::vector<double> out(n + 1);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    double lower = 0.0;
    if (i >= 2) {
      lower = ipow(a, i - 1);
      if (i >= 3) {
        const std::size_t m = i - 2;
        lower += oma * (c.c_plus * a * geometric_sum(a, one_minus_a, m) +
                        c.c_minus * a * r * mixed_a(m));
      }
      lower *= seq.phi_hat[i + 1];
    }
    double upper = ipow(b, n + 1 - i) * seq.phi_hat[n + 2];
    if (i == 1) {
      upper += seq.phi_hat[2] + oma * b * upper_run(n - 1);
    } else if (i <= n) {
      upper += oma * upper_run(n - i + 1);
    }
    upper *= seq.delta_hat[i - 1];
    out[i - 1] = oma * pref * (lower + upper);
  }
  return out;
}

}  // namespace

std::vector<double> nu_closed_form(const GameParams& params) {
  params.validate();
  if (std::abs(params.kappa() - 1.0) < kKappaOneBand) return nu_kappa_one(params);
  return nu_general(params);
}

}  // namespace impact_game
