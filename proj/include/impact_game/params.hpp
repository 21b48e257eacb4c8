#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace impact_game {

/// Raised when a model parameter or argument violates its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine breaks down (zero pivot, negative
/// radicand beyond roundoff, non-finite intermediate).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, std::ptrdiff_t index = -1)
      : std::runtime_error(what), index_(index) {}

  /// Offending index (pivot row, sequence position) or -1.
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

/// Discrete model: resilience rho, horizon T, grid count N (N+1 trading
/// times kT/N), transaction-cost weight theta and the two inventories.
struct GameParams {
  double rho = 1.0;
  double T = 1.0;
  std::size_t N = 10;
  double theta = 0.0;
  double x = 1.0;
  double y = 1.0;

  /// Throws ParameterError naming the violated bound.
  void validate() const;

  /// exp(-rho T / N), in (0,1).
  double alpha() const;
  /// 2 theta + 1/2.
  double kappa() const;
  /// Number of trading times, N + 1.
  std::size_t size() const { return N + 1; }
  double dt() const { return T / static_cast<double>(N); }
  double rhoT() const { return rho * T; }

  /// Same grid and impact parameters with a different theta.
  GameParams with_theta(double th) const {
    GameParams p = *this;
    p.theta = th;
    return p;
  }
  GameParams with_N(std::size_t n) const {
    GameParams p = *this;
    p.N = n;
    return p;
  }
};

}  // namespace impact_game
