#include "levelcurve/kernels.hpp"

namespace lvl::simd::scalar {

void poly_abs2_batch(const double* cr, const double* ci, std::size_t n_coef, const double* x, const double* y,
                     double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double zr = x[k];
    const double zi = y[k];
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t j = 0; j < n_coef; ++j) {
      const double t1 = ar * zr;
      const double t2 = ai * zi;
      const double t3 = ar * zi;
      const double t4 = ai * zr;
      ar = (t1 - t2) + cr[j];
      ai = (t3 + t4) + ci[j];
    }
    const double r2 = ar * ar;
    const double i2 = ai * ai;
    out[k] = r2 + i2;
  }
}

void min_dist2_batch(const double* px, const double* py, std::size_t n, const double* qx, const double* qy,
                     std::size_t m, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    double best = out[k];
    for (std::size_t j = 0; j < m; ++j) {
      const double dx = px[k] - qx[j];
      const double dy = py[k] - qy[j];
      const double dx2 = dx * dx;
      const double dy2 = dy * dy;
      const double d = dx2 + dy2;
      best = d < best ? d : best;
    }
    out[k] = best;
  }
}

}  // namespace lvl::simd::scalar
