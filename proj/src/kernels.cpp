#include "derlpso/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace derlpso::kernels {

namespace scalar {

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void cn_rhs(const double* u, std::size_t n, double c, double* out) {
    out[0] = u[0];
    for (std::size_t j = 1; j + 1 < n; ++j) {
        out[j] = u[j] + c * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
    }
    out[n - 1] = u[n - 1];
}

double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny,
                             double cx, double cy, double diag) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const double* up = u + (i - 1) * ny;
        const double* um = u + i * ny;
        const double* dn = u + (i + 1) * ny;
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            const double r = cx * (up[j] + dn[j]) + cy * (um[j - 1] + um[j + 1]) + diag * um[j];
            worst = std::max(worst, std::fabs(r));
        }
    }
    return worst;
}

}  // namespace scalar

#if defined(DERLPSO_HAVE_AVX2)
namespace avx2 {
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void cn_rhs(const double* u, std::size_t n, double c, double* out);
double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny,
                             double cx, double cy, double diag);
}  // namespace avx2
#endif

#if defined(DERLPSO_HAVE_NEON)
namespace neon {
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void cn_rhs(const double* u, std::size_t n, double c, double* out);
double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny,
                             double cx, double cy, double diag);
}  // namespace neon
#endif

namespace {

struct Ops {
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*cn_rhs)(const double*, std::size_t, double, double*);
    double (*stencil5_residual_max)(const double*, std::size_t, std::size_t, double, double,
                                    double);
    Backend id;
};

constexpr Ops kScalarOps{scalar::sum_sq_diff, scalar::axpy, scalar::cn_rhs,
                         scalar::stencil5_residual_max, Backend::Scalar};

#if defined(DERLPSO_HAVE_AVX2)
constexpr Ops kAvx2Ops{avx2::sum_sq_diff, avx2::axpy, avx2::cn_rhs, avx2::stencil5_residual_max,
                       Backend::Avx2};
#endif
#if defined(DERLPSO_HAVE_NEON)
constexpr Ops kNeonOps{neon::sum_sq_diff, neon::axpy, neon::cn_rhs, neon::stencil5_residual_max,
                       Backend::Neon};
#endif

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(DERLPSO_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::Neon:
#if defined(DERLPSO_HAVE_NEON)
            return true;  // NEON is baseline on aarch64
#else
            return false;
#endif
        default:
            return false;
    }
}

const Ops* ops_for(Backend backend) {
    switch (backend) {
        case Backend::Avx2:
#if defined(DERLPSO_HAVE_AVX2)
            return &kAvx2Ops;
#else
            return &kScalarOps;
#endif
        case Backend::Neon:
#if defined(DERLPSO_HAVE_NEON)
            return &kNeonOps;
#else
            return &kScalarOps;
#endif
        default:
            return &kScalarOps;
    }
}

Backend detect_backend() {
    // DERLPSO_KERNELS=scalar|avx2|neon overrides auto-detection.
    if (const char* env = std::getenv("DERLPSO_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::Avx2))
            return Backend::Avx2;
        if (std::strcmp(env, "neon") == 0 && backend_available(Backend::Neon))
            return Backend::Neon;
    }
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
    if (backend_available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

const Ops* g_ops = ops_for(detect_backend());

}  // namespace

void set_backend(Backend backend) {
    if (backend == Backend::Auto) {
        g_ops = ops_for(detect_backend());
        return;
    }
    g_ops = backend_available(backend) ? ops_for(backend) : &kScalarOps;
}

Backend active_backend() { return g_ops->id; }

const char* backend_name() {
    switch (g_ops->id) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
        default:
            return "scalar";
    }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return g_ops->sum_sq_diff(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    g_ops->axpy(alpha, x, y, n);
}

void cn_rhs(const double* u, std::size_t n, double c, double* out) {
    g_ops->cn_rhs(u, n, c, out);
}

double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny, double cx,
                             double cy, double diag) {
    return g_ops->stencil5_residual_max(u, nx, ny, cx, cy, diag);
}

}  // namespace derlpso::kernels
