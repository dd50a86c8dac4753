#include "levelcurve/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define LVL_HAVE_X86 1
#else
#define LVL_HAVE_X86 0
#endif

namespace lvl::simd::avx2 {

#if LVL_HAVE_X86

// Compiled with -mavx2 (no FMA) so each lane rounds exactly like the scalar
// reference.

void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d zr = _mm256_loadu_pd(x + k);
    const __m256d zi = _mm256_loadu_pd(y + k);
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n_coef; ++j) {
      const __m256d t1 = _mm256_mul_pd(ar, zr);
      const __m256d t2 = _mm256_mul_pd(ai, zi);
      const __m256d t3 = _mm256_mul_pd(ar, zi);
      const __m256d t4 = _mm256_mul_pd(ai, zr);
      ar = _mm256_add_pd(_mm256_sub_pd(t1, t2), _mm256_set1_pd(cr[j]));
      ai = _mm256_add_pd(_mm256_add_pd(t3, t4), _mm256_set1_pd(ci[j]));
    }
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai)));
  }
  if (k < n) scalar::poly_abs2_batch(cr, ci, n_coef, x + k, y + k, out + k, n - k);
}

void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out) {
  // Four query points per register against every q; min is order-free so the
  // lane result equals the scalar loop exactly.
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(px + k);
    const __m256d y = _mm256_loadu_pd(py + k);
    __m256d best = _mm256_loadu_pd(out + k);
    for (std::size_t j = 0; j < m; ++j) {
      const __m256d dx = _mm256_sub_pd(x, _mm256_set1_pd(qx[j]));
      const __m256d dy = _mm256_sub_pd(y, _mm256_set1_pd(qy[j]));
      const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      best = _mm256_min_pd(d, best);
    }
    _mm256_storeu_pd(out + k, best);
  }
  if (k < n) scalar::min_dist2_batch(px + k, py + k, n - k, qx, qy, m, out + k);
}

#else

void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n) {
  scalar::poly_abs2_batch(cr, ci, n_coef, x, y, out, n);
}

void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out) {
  scalar::min_dist2_batch(px, py, n, qx, qy, m, out);
}

#endif

}  // namespace lvl::simd::avx2
