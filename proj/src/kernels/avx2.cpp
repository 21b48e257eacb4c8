// AVX2 + FMA kernels. Compiled with -mavx2 -mfma -ffp-contract=off so the
// element-wise kernels round exactly like the scalar reference; the reducing
// kernels (dot, sum) use four independent compensated accumulators and agree
// with the reference to within a few ulps of the exact result.

#include <cmath>
#include <cstddef>

#include "impact_game/kernels/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define IMPACT_GAME_HAVE_AVX2 1
#else
#define IMPACT_GAME_HAVE_AVX2 0
#endif

namespace impact_game::kernels::avx2 {

#if IMPACT_GAME_HAVE_AVX2

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void two_sum(__m256d a, __m256d b, __m256d& s, __m256d& e) {
  s = _mm256_add_pd(a, b);
  const __m256d bb = _mm256_sub_pd(s, a);
  e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
}

// Folds the four lanes of (p, s) into one compensated scalar pair.
inline void fold_lanes(__m256d pv, __m256d sv, double& p, double& s) {
  alignas(32) double pl[4];
  alignas(32) double sl[4];
  _mm256_store_pd(pl, pv);
  _mm256_store_pd(sl, sv);
  p = pl[0];
  s = sl[0];
  for (int k = 1; k < 4; ++k) {
    double q;
    two_sum(p, pl[k], p, q);
    s += q + sl[k];
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d pv = _mm256_setzero_pd();
  __m256d sv = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(pa + i);
    const __m256d vb = _mm256_loadu_pd(pb + i);
    const __m256d h = _mm256_mul_pd(va, vb);
    const __m256d r = _mm256_fmsub_pd(va, vb, h);
    __m256d q;
    two_sum(pv, h, pv, q);
    sv = _mm256_add_pd(sv, _mm256_add_pd(q, r));
  }
  double p;
  double s;
  fold_lanes(pv, sv, p, s);
  for (; i < n; ++i) {
    const double h = pa[i] * pb[i];
    const double r = std::fma(pa[i], pb[i], -h);
    double q;
    two_sum(p, h, p, q);
    s += q + r;
  }
  return p + s;
}

double sum(std::span<const double> a) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  __m256d pv = _mm256_setzero_pd();
  __m256d sv = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d q;
    two_sum(pv, _mm256_loadu_pd(pa + i), pv, q);
    sv = _mm256_add_pd(sv, q);
  }
  double p;
  double s;
  fold_lanes(pv, sv, p, s);
  for (; i < n; ++i) {
    double q;
    two_sum(p, pa[i], p, q);
    s += q;
  }
  return p + s;
}

void tridiag_apply(const TridiagStencil& st, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  py[0] = st.scale * (st.first_diag * px[0] + st.upper * px[1]);
  const __m256d lo = _mm256_set1_pd(st.lower);
  const __m256d di = _mm256_set1_pd(st.diag);
  const __m256d up = _mm256_set1_pd(st.upper);
  const __m256d sc = _mm256_set1_pd(st.scale);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d xm = _mm256_loadu_pd(px + i - 1);
    const __m256d x0 = _mm256_loadu_pd(px + i);
    const __m256d xp = _mm256_loadu_pd(px + i + 1);
    // scale * ((lo*xm + di*x0) + up*xp), same association as the reference
    __m256d acc = _mm256_add_pd(_mm256_mul_pd(lo, xm), _mm256_mul_pd(di, x0));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(up, xp));
    _mm256_storeu_pd(py + i, _mm256_mul_pd(sc, acc));
  }
  for (; i + 1 < n; ++i) {
    py[i] = st.scale * (st.lower * px[i - 1] + st.diag * px[i] + st.upper * px[i + 1]);
  }
  py[n - 1] = st.scale * (st.lower * px[n - 2] + st.last_diag * px[n - 1]);
}

void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(y.data() + i)));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

#else  // no AVX2 in this build: forward to the reference so the symbols exist

double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double sum(std::span<const double> a) { return scalar::sum(a); }
void tridiag_apply(const TridiagStencil& s, std::span<const double> x, std::span<double> y) {
  scalar::tridiag_apply(s, x, y);
}
void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  scalar::lincomb(a, x, b, y, out);
}

#endif

bool compiled_with_avx2() { return IMPACT_GAME_HAVE_AVX2 != 0; }

}  // namespace impact_game::kernels::avx2
