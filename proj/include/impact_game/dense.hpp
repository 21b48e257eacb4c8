#pragma once
// Dense O(N^3) reference solves. Used only for verification; production
// paths never call these.

#include <cstddef>
#include <span>
#include <vector>

#include "impact_game/params.hpp"

namespace impact_game::dense {

/// Row-major n x n matrix.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Gamma + Gamma_tilde + 2 theta I.
Matrix nu_system(const GameParams& p);
/// Gamma - Gamma_tilde + 2 theta I.
Matrix omega_system(const GameParams& p);
/// (1 - alpha^2)(I + Gamma^{-1}(Gamma_tilde + 2 theta I)), 1-based in the
/// literature, 0-based here.
Matrix b_matrix(const GameParams& p);

/// LU with partial pivoting. Throws NumericalError if singular.
std::vector<double> solve(const Matrix& m, std::span<const double> rhs);
Matrix inverse(const Matrix& m);
std::vector<double> multiply(const Matrix& m, std::span<const double> x);
/// True if the symmetric matrix admits a Cholesky factorization.
bool cholesky_ok(const Matrix& m);

std::vector<double> solve_nu(const GameParams& p);
std::vector<double> solve_omega(const GameParams& p);

}  // namespace impact_game::dense
