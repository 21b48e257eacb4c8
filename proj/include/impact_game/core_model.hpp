#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "impact_game/params.hpp"

namespace impact_game {

/// Dense storage is kept only for N up to this limit unless asked for explicitly.
inline constexpr std::size_t kDenseAutoLimit = 512;

enum class DenseMode { automatic, always, never };

/// The decay-kernel matrices of the discrete model.
///
/// gamma_tilde is lower triangular with 1/2 on the diagonal and
/// alpha^(i-j) below it; gamma = gamma_tilde + gamma_tilde^T is the
/// Kac-Murdock-Szego matrix alpha^|i-j|. Entries are always available on
/// demand; the (N+1)^2 arrays exist only when has_dense() is true.
class ImpactMatrices {
 public:
  ImpactMatrices(double alpha, std::size_t size, bool dense);

  std::size_t size() const { return size_; }
  double alpha() const { return alpha_; }
  bool has_dense() const { return !gamma_tilde_.empty(); }

  double gamma_tilde(std::size_t i, std::size_t j) const;
  double gamma(std::size_t i, std::size_t j) const;

  /// Row-major dense arrays; throw std::logic_error unless has_dense().
  std::span<const double> dense_gamma_tilde() const;
  std::span<const double> dense_gamma() const;

 private:
  double alpha_;
  std::size_t size_;
  std::vector<double> powers_;  // alpha^k, k = 0..size-1
  std::vector<double> gamma_tilde_;
  std::vector<double> gamma_;
};

/// Validates params and builds the matrices. Throws ParameterError.
ImpactMatrices build_matrices(const GameParams& params, DenseMode mode = DenseMode::automatic);

/// 1 - alpha^2 evaluated without cancellation.
double one_minus_alpha_sq(const GameParams& params);

/// gamma^{-1} rhs through the closed tridiagonal inverse, O(N).
std::vector<double> gamma_inverse_apply(const GameParams& params, std::span<const double> rhs);

/// gamma_tilde x, O(N) by forward recursion.
std::vector<double> gamma_tilde_apply(double alpha, std::span<const double> x);
/// gamma_tilde^T x, O(N) by backward recursion.
std::vector<double> gamma_tilde_transpose_apply(double alpha, std::span<const double> x);
/// gamma x, O(N).
std::vector<double> gamma_apply(double alpha, std::span<const double> x);

}  // namespace impact_game
