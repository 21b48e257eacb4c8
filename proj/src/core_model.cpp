#include "impact_game/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "impact_game/kernels/kernels.hpp"

namespace impact_game {

ImpactMatrices::ImpactMatrices(double alpha, std::size_t size, bool dense)
    : alpha_(alpha), size_(size), powers_(size) {
  powers_[0] = 1.0;
  for (std::size_t k = 1; k < size; ++k) powers_[k] = std::pow(alpha, static_cast<double>(k));
  if (!dense) return;
  gamma_tilde_.assign(size * size, 0.0);
  gamma_.assign(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j <= i; ++j) gamma_tilde_[i * size + j] = gamma_tilde(i, j);
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      gamma_[i * size + j] = gamma_tilde_[i * size + j] + gamma_tilde_[j * size + i];
    }
  }
}

double ImpactMatrices::gamma_tilde(std::size_t i, std::size_t j) const {
  if (i < j) return 0.0;
  if (i == j) return 0.5;
  return powers_[i - j];
}

double ImpactMatrices::gamma(std::size_t i, std::size_t j) const {
  return gamma_tilde(i, j) + gamma_tilde(j, i);
}

std::span<const double> ImpactMatrices::dense_gamma_tilde() const {
  if (!has_dense()) throw std::logic_error("dense gamma_tilde was not materialized");
  return gamma_tilde_;
}

std::span<const double> ImpactMatrices::dense_gamma() const {
  if (!has_dense()) throw std::logic_error("dense gamma was not materialized");
  return gamma_;
}

ImpactMatrices build_matrices(const GameParams& params, DenseMode mode) {
  params.validate();
  const bool dense = mode == DenseMode::always ||
                     (mode == DenseMode::automatic && params.N <= kDenseAutoLimit);
  return ImpactMatrices(params.alpha(), params.size(), dense);
}

double one_minus_alpha_sq(const GameParams& params) {
  return -std::expm1(-2.0 * params.rho * params.T / static_cast<double>(params.N));
}

std::vector<double> gamma_inverse_apply(const GameParams& params, std::span<const double> rhs) {
  params.validate();
  if (rhs.size() != params.size()) {
    throw ParameterError("gamma_inverse_apply: rhs has length " + std::to_string(rhs.size()) +
                         ", expected N+1 = " + std::to_string(params.size()));
  }
  const double a = params.alpha();
  kernels::TridiagStencil st;
  st.lower = -a;
  st.upper = -a;
  st.diag = 1.0 + a * a;
  st.first_diag = 1.0;
  st.last_diag = 1.0;
  st.scale = 1.0 / one_minus_alpha_sq(params);
  std::vector<double> out(rhs.size());
  kernels::tridiag_apply(st, rhs, out);
  return out;
}

std::vector<double> gamma_tilde_apply(double alpha, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  double tail = 0.0;  // sum_{j<i} alpha^(i-j) x_j
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) tail = alpha * (tail + x[i - 1]);
    out[i] = 0.5 * x[i] + tail;
  }
  return out;
}

std::vector<double> gamma_tilde_transpose_apply(double alpha, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  double head = 0.0;  // sum_{j>i} alpha^(j-i) x_j
  for (std::size_t k = n; k-- > 0;) {
    if (k + 1 < n) head = alpha * (head + x[k + 1]);
    out[k] = 0.5 * x[k] + head;
  }
  return out;
}

std::vector<double> gamma_apply(double alpha, std::span<const double> x) {
  auto lower = gamma_tilde_apply(alpha, x);
  const auto upper = gamma_tilde_transpose_apply(alpha, x);
  kernels::lincomb(1.0, lower, 1.0, upper, lower);
  return lower;
}

}  // namespace impact_game
