#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the loss evaluator and the PDE linear
// algebra. Each kernel has a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at startup from
// CPU capabilities. The elementwise kernels (axpy, cn_rhs) are bit-identical
// across backends; the reductions may differ by accumulation order and are
// equivalence-tested against the scalar path to a few ulps.
namespace derlpso::kernels {

enum class Backend { Auto, Scalar, Avx2, Neon };

/// Force a specific backend (tests) or restore auto-detection.
/// Falls back to Scalar if the requested backend is unavailable.
void set_backend(Backend backend);

/// Backend currently in use (never Auto).
Backend active_backend();

/// Name of the active backend: "scalar", "avx2" or "neon".
const char* backend_name();

/// sum_i (a[i] - b[i])^2
double sum_sq_diff(const double* a, const double* b, std::size_t n);

/// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// Crank-Nicolson right-hand side: out[j] = u[j] + c*(u[j-1] - 2u[j] + u[j+1])
/// for interior j in [1, n-2]; out[0] and out[n-1] copy u.
void cn_rhs(const double* u, std::size_t n, double c, double* out);

/// Max |cx*(u[i-1,j]+u[i+1,j]) + cy*(u[i,j-1]+u[i,j+1]) + diag*u[i,j]| over
/// the interior of a row-major nx-by-ny field.
double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny,
                             double cx, double cy, double diag);

// Scalar reference implementations, always available (equivalence tests).
namespace scalar {
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void cn_rhs(const double* u, std::size_t n, double c, double* out);
double stencil5_residual_max(const double* u, std::size_t nx, std::size_t ny,
                             double cx, double cy, double diag);
}  // namespace scalar

}  // namespace derlpso::kernels
