#include "impact_game/params.hpp"

#include <cmath>
#include <sstream>

namespace impact_game {

void GameParams::validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError(msg); };
  if (!std::isfinite(rho) || !(rho > 0.0)) fail("rho must be finite and > 0");
  if (!std::isfinite(T) || !(T > 0.0)) fail("T must be finite and > 0");
  if (N < 2) fail("N must be >= 2");
  if (!std::isfinite(theta) || !(theta >= 0.0)) fail("theta must be finite and >= 0");
  if (!std::isfinite(x) || !std::isfinite(y)) fail("inventories x, y must be finite");
  const double a = alpha();
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << "alpha = exp(-rho*T/N) = " << a << " must lie in (0,1); rho*T/N = " << rho * T / N
       << " is out of range";
    fail(os.str());
  }
}

double GameParams::alpha() const { return std::exp(-rho * T / static_cast<double>(N)); }

double GameParams::kappa() const { return 2.0 * theta + 0.5; }

}  // namespace impact_game
