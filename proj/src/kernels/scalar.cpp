// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

#include <cmath>
#include <cstddef>

#include "impact_game/kernels/kernels.hpp"

namespace impact_game::kernels::scalar {

namespace {

// Error-free transformation: a + b = s + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  double p = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = a[i] * b[i];
    const double r = std::fma(a[i], b[i], -h);
    double q;
    two_sum(p, h, p, q);
    s += q + r;
  }
  return p + s;
}

double sum(std::span<const double> a) {
  double p = 0.0;
  double s = 0.0;
  for (double v : a) {
    double q;
    two_sum(p, v, p, q);
    s += q;
  }
  return p + s;
}

void tridiag_apply(const TridiagStencil& st, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  y[0] = st.scale * (st.first_diag * x[0] + st.upper * x[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = st.scale * (st.lower * x[i - 1] + st.diag * x[i] + st.upper * x[i + 1]);
  }
  y[n - 1] = st.scale * (st.lower * x[n - 2] + st.last_diag * x[n - 1]);
}

void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
}

}  // namespace impact_game::kernels::scalar
