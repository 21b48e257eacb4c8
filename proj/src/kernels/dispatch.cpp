#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "impact_game/kernels/kernels.hpp"

namespace impact_game::kernels {

namespace avx2 {
bool compiled_with_avx2();
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("IMPACT_GAME_FORCE_SCALAR");
  if (env != nullptr && std::strcmp(env, "1") == 0) return Isa::scalar;
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool ok = avx2::compiled_with_avx2() && cpu_has_avx2();
  return ok;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel ISA not supported on this CPU: " +
                                std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

void reset_isa() { current().store(detect(), std::memory_order_relaxed); }

double dot(std::span<const double> a, std::span<const double> b) {
  return active_isa() == Isa::avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

double sum(std::span<const double> a) {
  return active_isa() == Isa::avx2 ? avx2::sum(a) : scalar::sum(a);
}

void tridiag_apply(const TridiagStencil& s, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("tridiag_apply: sizes must match and be >= 2");
  }
  if (active_isa() == Isa::avx2) {
    avx2::tridiag_apply(s, x, y);
  } else {
    scalar::tridiag_apply(s, x, y);
  }
}

void lincomb(double a, std::span<const double> x, double b, std::span<const double> y,
             std::span<double> out) {
  if (x.size() != out.size() || y.size() != out.size()) {
    throw std::invalid_argument("lincomb: size mismatch");
  }
  if (active_isa() == Isa::avx2) {
    avx2::lincomb(a, x, b, y, out);
  } else {
    scalar::lincomb(a, x, b, y, out);
  }
}

}  // namespace impact_game::kernels
