// NEON kernel variants for aarch64, compiled with -ffp-contract=off.
// Mirrors the scalar arithmetic exactly for the elementwise kernels.

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

namespace derlpso::kernels::neon {

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
        acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
        acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
    }
    acc0 = vaddq_f64(acc0, acc1);
    double total = vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void cn_rhs(const double* u, std::size_t n, double c, double* out) {
    out[0] = u[0];
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t j = 1;
    for (; j + 2 <= n - 1; j += 2) {
        const float64x2_t um = vld1q_f64(u + j - 1);
        const float64x2_t uc = vld1q_f64(u + j);
        const float64x2_t up = vld1q_f64(u + j + 1);
        const float64x2_t lap = vaddq_f64(vsubq_f64(um, vmulq_f64(two, uc)), up);
        vst1q_f64(out + j, vaddq_f64(uc, vmulq_f64(vc, lap)));
    }
    for (; j + 1 < n; ++j) {
        out[j] = u[j] + c * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
    }
    out[n - 1] = u[n - 1];
}

double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny, double cx,
                             double cy, double diag) {
    const float64x2_t vcx = vdupq_n_f64(cx);
    const float64x2_t vcy = vdupq_n_f64(cy);
    const float64x2_t vd = vdupq_n_f64(diag);
    float64x2_t vmax = vdupq_n_f64(0.0);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double* up = u + (i - 1) * ny;
        const double* um = u + i * ny;
        const double* dn = u + (i + 1) * ny;
        std::size_t j = 1;
        for (; j + 2 <= ny - 1; j += 2) {
            const float64x2_t vert = vaddq_f64(vld1q_f64(up + j), vld1q_f64(dn + j));
            const float64x2_t horiz = vaddq_f64(vld1q_f64(um + j - 1), vld1q_f64(um + j + 1));
            float64x2_t r = vmulq_f64(vcx, vert);
            r = vaddq_f64(r, vmulq_f64(vcy, horiz));
            r = vaddq_f64(r, vmulq_f64(vd, vld1q_f64(um + j)));
            vmax = vmaxq_f64(vmax, vabsq_f64(r));
        }
        for (; j + 1 < ny; ++j) {
            const double r = cx * (up[j] + dn[j]) + cy * (um[j - 1] + um[j + 1]) + diag * um[j];
            worst = std::max(worst, std::fabs(r));
        }
    }
    worst = std::max(worst, vgetq_lane_f64(vmax, 0));
    worst = std::max(worst, vgetq_lane_f64(vmax, 1));
    return worst;
}

}  // namespace derlpso::kernels::neon
