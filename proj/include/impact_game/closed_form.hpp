#pragma once
// Explicit formulas for the tridiagonal factor B, its inverse and the
// equilibrium vectors nu and omega. Everything is evaluated relative to
// powers of the dominant root m_plus so nothing overflows for N up to 1e5;
// the subdominant root may be negative (theta < 1/4) and is carried through
// integer powers, never logs.

#include <cstddef>
#include <vector>

#include "impact_game/params.hpp"

namespace impact_game {

struct ClosedFormCoefficients {
  double alpha = 0.0;
  double kappa = 0.0;
  double R = 0.0;
  double m_plus = 0.0;
  double m_minus = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
  double d_plus = 0.0;
  double d_minus = 0.0;
  double one_minus_alpha = 0.0;  // without cancellation

  /// m_minus / m_plus, in (-1, 1).
  double ratio() const { return m_minus / m_plus; }
  /// Super-diagonal decay alpha*kappa/m_plus and its complement.
  double upper_decay() const { return alpha * kappa / m_plus; }
  double one_minus_upper_decay() const;
  /// Sub-diagonal decay alpha*(kappa-1)/m_plus and its complement.
  double lower_decay() const { return alpha * (kappa - 1.0) / m_plus; }
  double one_minus_lower_decay() const;

 private:
  double one_minus_decay(double c) const;
};

/// Throws NumericalError if the radicand is negative beyond roundoff.
ClosedFormCoefficients coefficients(const GameParams& params);

/// delta_hat[k] = delta_k / m_plus^k for k = 0..N+1;
/// phi_hat[k] = phi_k / m_plus^(N+2-k) for k = 2..N+2 (entries 0, 1 unused).
struct ScaledSequences {
  std::vector<double> delta_hat;
  std::vector<double> phi_hat;
  double log_scale = 0.0;  // log(m_plus)

  /// Unscaled values; may overflow for large k.
  double delta(std::size_t k) const;
  double phi(std::size_t k) const;
};

ScaledSequences delta_phi_sequences(const GameParams& params);

/// Entries of B^{-1} (1-based indices as in the usual statement of the
/// Usmani formula). Construction is O(N); each entry is O(1).
class BInverse {
 public:
  explicit BInverse(const GameParams& params);
  double entry(std::size_t i, std::size_t j) const;
  std::size_t size() const { return n_ + 1; }
  const ClosedFormCoefficients& coefficients() const { return coef_; }
  const ScaledSequences& sequences() const { return seq_; }

 private:
  std::size_t n_;
  ClosedFormCoefficients coef_;
  ScaledSequences seq_;
  double prefactor_;  // 1 / (m_plus * delta_hat[N+1])
};

/// Single entry; throws ParameterError for indices outside 1..N+1.
double b_inverse_entry(const GameParams& params, std::size_t i, std::size_t j);

/// omega = (Gamma - Gamma_tilde + 2 theta I)^{-1} 1 componentwise.
std::vector<double> omega_closed_form(const GameParams& params);

/// nu = (Gamma + Gamma_tilde + 2 theta I)^{-1} 1 in O(N). kappa within 1e-9
/// of 1 uses the dedicated formulas.
std::vector<double> nu_closed_form(const GameParams& params);

/// (1 - x^n) / (1 - x) given 1 - x accurately; n when x == 1.
double geometric_sum(double x, double one_minus_x, std::size_t n);

}  // namespace impact_game
