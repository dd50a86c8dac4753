#pragma once

#include <cstddef>

// Batch inner loops with a scalar reference and an AVX2 variant. Both variants
// perform the same IEEE operations in the same order, so results are
// bit-identical; the library is built with floating-point contraction off.

namespace lvl::simd {

enum class Isa { Scalar, Avx2 };

/// Variant picked at first use: AVX2 when the CPU reports it, unless the
/// environment variable LEVELCURVE_SIMD=scalar forces the reference path.
Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);

/// out[k] = |p(x[k] + i y[k])|^2 where p has `n_coef` coefficients given in
/// descending order (cr[0] + i ci[0] is the leading coefficient).
void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n);

/// out[k] = min(out[k], min_j (px[k]-qx[j])^2 + (py[k]-qy[j])^2). Callers
/// initialize out (usually to +inf) and may call repeatedly over blocks of q.
void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out);

namespace scalar {
void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n);
void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out);
}  // namespace scalar

namespace avx2 {
void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n);
void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out);
}  // namespace avx2

/// Dispatch-bypassing entry points for the equivalence tests.
void poly_abs2_batch(Isa isa, const double* cr, const double* ci, std::size_t n_coef, const double* x,
                     const double* y, double* out, std::size_t n);
void min_dist2_batch(Isa isa, const double* px, const double* py, std::size_t n, const double* qx,
                     const double* qy, std::size_t m, double* out);

}  // namespace lvl::simd
