#pragma once
// Data-parallel inner loops used by the solvers, cost evaluation and the
// Monte Carlo engine. Every kernel has a scalar reference implementation and
// an AVX2+FMA variant; the variant is chosen once at runtime from CPUID and
// can be overridden (tests pin each ISA and compare the two).

#include <span>
#include <string_view>

namespace impact_game::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True if the CPU (and this build) can run the given ISA.
bool isa_supported(Isa isa);

/// ISA currently used by the dispatching entry points.
Isa active_isa();

/// Pins the dispatching entry points to `isa`. Throws std::invalid_argument
/// if unsupported. Not thread-safe with concurrent kernel calls.
void force_isa(Isa isa);

/// Restores CPUID-based selection (honours IMPACT_GAME_FORCE_SCALAR=1).
void reset_isa();

/// Constant-coefficient tridiagonal operator with distinct corner diagonals:
///   y_0     = scale * (first_diag * x_0 + upper * x_1)
///   y_i     = scale * (lower * x_{i-1} + diag * x_i + upper * x_{i+1})
///   y_{n-1} = scale * (lower * x_{n-2} + last_diag * x_{n-1})
struct TridiagStencil {
  double lower = 0.0;
  double diag = 0.0;
  double upper = 0.0;
  double first_diag = 0.0;
  double last_diag = 0.0;
  double scale = 1.0;
};

// Dispatching entry points.

/// Compensated dot product (twice-working-precision accumulation).
double dot(std::span<const double> a, std::span<const double> b);
/// Compensated sum.
double sum(std::span<const double> a);
/// y = S x; requires x.size() == y.size() >= 2 and no aliasing.
void tridiag_apply(const TridiagStencil& s, std::span<const double> x, std::span<double> y);
/// out = a * x + b * y (out may alias x or y).
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void tridiag_apply(const TridiagStencil& s, std::span<const double> x, std::span<double> y);
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void tridiag_apply(const TridiagStencil& s, std::span<const double> x, std::span<double> y);
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out);
}  // namespace avx2

}  // namespace impact_game::kernels
