#include "impact_game/dense.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/LU>
#include <cmath>

#include "impact_game/core_model.hpp"

namespace impact_game::dense {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMat> view(const Matrix& m) {
  return {m.a.data(), static_cast<Eigen::Index>(m.n), static_cast<Eigen::Index>(m.n)};
}

Matrix from_gamma(const GameParams& p, double tilde_sign) {
  const ImpactMatrices mats = build_matrices(p, DenseMode::always);
  const auto g = mats.dense_gamma();
  const auto gt = mats.dense_gamma_tilde();
  Matrix m(p.size());
  for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] = g[k] + tilde_sign * gt[k];
  for (std::size_t i = 0; i < m.n; ++i) m(i, i) += 2.0 * p.theta;
  return m;
}

}  // namespace

Matrix nu_system(const GameParams& p) { return from_gamma(p, 1.0); }
Matrix omega_system(const GameParams& p) { return from_gamma(p, -1.0); }

Matrix b_matrix(const GameParams& p) {
  const ImpactMatrices mats = build_matrices(p, DenseMode::always);
  const std::size_t n = p.size();
  RowMat rhs = Eigen::Map<const RowMat>(mats.dense_gamma_tilde().data(), n, n);
  rhs.diagonal().array() += 2.0 * p.theta;
  const Eigen::Map<const RowMat> gamma(mats.dense_gamma().data(), n, n);
  RowMat b = gamma.partialPivLu().solve(rhs);
  b.diagonal().array() += 1.0;
  b *= one_minus_alpha_sq(p);
  Matrix out(n);
  Eigen::Map<RowMat>(out.a.data(), n, n) = b;
  return out;
}

std::vector<double> solve(const Matrix& m, std::span<const double> rhs) {
  if (rhs.size() != m.n) throw ParameterError("dense::solve: size mismatch");
  const Eigen::PartialPivLU<RowMat> lu(view(m));
  const double det = lu.determinant();
  if (!(std::isfinite(det) && det != 0.0)) throw NumericalError("dense::solve: singular matrix");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::VectorXd x = lu.solve(b);
  return {x.data(), x.data() + x.size()};
}

Matrix inverse(const Matrix& m) {
  Matrix out(m.n);
  Eigen::Map<RowMat>(out.a.data(), m.n, m.n) = view(m).partialPivLu().inverse();
  return out;
}

std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.n) throw ParameterError("dense::multiply: size mismatch");
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd r = view(m) * v;
  return {r.data(), r.data() + r.size()};
}

bool cholesky_ok(const Matrix& m) {
  const Eigen::LLT<RowMat> llt(view(m));
  return llt.info() == Eigen::Success;
}

std::vector<double> solve_nu(const GameParams& p) {
  const std::vector<double> ones(p.size(), 1.0);
  return solve(nu_system(p), ones);
}

std::vector<double> solve_omega(const GameParams& p) {
  const std::vector<double> ones(p.size(), 1.0);
  return solve(omega_system(p), ones);
}

}  // namespace impact_game::dense
