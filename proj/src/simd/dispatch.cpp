#include <cstdlib>
#include <cstring>

#include "levelcurve/kernels.hpp"

namespace lvl::simd {
namespace {

Isa detect() {
  const char* env = std::getenv("LEVELCURVE_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void poly_abs2_batch(Isa isa, const double* cr, const double* ci, std::size_t n_coef, const double* x,
                     const double* y, double* out, std::size_t n) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    avx2::poly_abs2_batch(cr, ci, n_coef, x, y, out, n);
  } else {
    scalar::poly_abs2_batch(cr, ci, n_coef, x, y, out, n);
  }
}

void min_dist2_batch(Isa isa, const double* px, const double* py, std::size_t n, const double* qx,
                     const double* qy, std::size_t m, double* out) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    avx2::min_dist2_batch(px, py, n, qx, qy, m, out);
  } else {
    scalar::min_dist2_batch(px, py, n, qx, qy, m, out);
  }
}

void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n) {
  poly_abs2_batch(active_isa(), cr, ci, n_coef, x, y, out, n);
}

void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out) {
  min_dist2_batch(active_isa(), px, py, n, qx, qy, m, out);
}

}  // namespace lvl::simd
