// AVX2 kernel variants. This translation unit is compiled with -mavx2 and
// -ffp-contract=off; the dispatcher only selects it after a cpuid check.
// No FMA: mul/add stay separate so the elementwise kernels (axpy, cn_rhs)
// produce bit-identical results to the scalar reference.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace derlpso::kernels::avx2 {

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d, d));
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void cn_rhs(const double* u, std::size_t n, double c, double* out) {
    out[0] = u[0];
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t j = 1;
    for (; j + 4 <= n - 1; j += 4) {
        const __m256d um = _mm256_loadu_pd(u + j - 1);
        const __m256d uc = _mm256_loadu_pd(u + j);
        const __m256d up = _mm256_loadu_pd(u + j + 1);
        // u[j] + c*(u[j-1] - 2u[j] + u[j+1]), same association as scalar
        const __m256d lap = _mm256_add_pd(_mm256_sub_pd(um, _mm256_mul_pd(two, uc)), up);
        _mm256_storeu_pd(out + j, _mm256_add_pd(uc, _mm256_mul_pd(vc, lap)));
    }
    for (; j + 1 < n; ++j) {
        out[j] = u[j] + c * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
    }
    out[n - 1] = u[n - 1];
}

double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny, double cx,
                             double cy, double diag) {
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    const __m256d vd = _mm256_set1_pd(diag);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double* up = u + (i - 1) * ny;
        const double* um = u + i * ny;
        const double* dn = u + (i + 1) * ny;
        std::size_t j = 1;
        for (; j + 4 <= ny - 1; j += 4) {
            const __m256d vert = _mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(dn + j));
            const __m256d horiz =
                _mm256_add_pd(_mm256_loadu_pd(um + j - 1), _mm256_loadu_pd(um + j + 1));
            __m256d r = _mm256_mul_pd(vcx, vert);
            r = _mm256_add_pd(r, _mm256_mul_pd(vcy, horiz));
            r = _mm256_add_pd(r, _mm256_mul_pd(vd, _mm256_loadu_pd(um + j)));
            vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, r));
        }
        for (; j + 1 < ny; ++j) {
            const double r = cx * (up[j] + dn[j]) + cy * (um[j - 1] + um[j + 1]) + diag * um[j];
            worst = std::max(worst, std::fabs(r));
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    for (double lane : lanes) worst = std::max(worst, lane);
    return worst;
}

}  // namespace derlpso::kernels::avx2
