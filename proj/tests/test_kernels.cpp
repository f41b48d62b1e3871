#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "derlpso/kernels.hpp"
#include "derlpso/rng.hpp"
#include "oracles.hpp"

using namespace derlpso;
namespace k = derlpso::kernels;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform_in(rng, -scale, scale);
    return v;
}

struct BackendGuard {
    ~BackendGuard() { k::set_backend(k::Backend::Auto); }
};

}  // namespace

TEST_CASE("scalar sum_sq_diff matches a compensated-summation reference") {
    Rng rng(11);
    for (std::size_t n : {0u, 1u, 3u, 17u, 400u, 1601u}) {
        const auto a = random_vector(rng, n, 3.0);
        const auto b = random_vector(rng, n, 3.0);
        const double expected = oracles::kahan_sum_sq_diff(a, b);
        const double got = k::scalar::sum_sq_diff(a.data(), b.data(), n);
        CHECK(got == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("SIMD backends agree with the scalar reference") {
    BackendGuard guard;
    for (k::Backend backend : {k::Backend::Avx2, k::Backend::Neon}) {
        k::set_backend(backend);
        if (k::active_backend() != backend) continue;  // not available on this host

        Rng rng(7);
        for (std::size_t n : {1u, 2u, 5u, 8u, 33u, 128u, 1000u}) {
            const auto a = random_vector(rng, n, 5.0);
            const auto b = random_vector(rng, n, 5.0);

            // Reductions may reassociate: compare to a few ulps.
            const double ref = k::scalar::sum_sq_diff(a.data(), b.data(), n);
            CHECK(k::sum_sq_diff(a.data(), b.data(), n) ==
                  doctest::Approx(ref).epsilon(1e-14));

            // Elementwise kernels are bit-identical across backends.
            auto y_scalar = random_vector(rng, n, 2.0);
            auto y_simd = y_scalar;
            const double alpha = uniform_in(rng, -2.0, 2.0);
            k::scalar::axpy(alpha, a.data(), y_scalar.data(), n);
            k::axpy(alpha, a.data(), y_simd.data(), n);
            CHECK(y_scalar == y_simd);

            if (n >= 3) {
                std::vector<double> out_scalar(n), out_simd(n);
                k::scalar::cn_rhs(a.data(), n, 0.37, out_scalar.data());
                k::cn_rhs(a.data(), n, 0.37, out_simd.data());
                CHECK(out_scalar == out_simd);
            }
        }

        // Stencil residual reduces via max, which is order-independent.
        Rng rng2(99);
        for (std::size_t nx : {3u, 5u, 12u}) {
            for (std::size_t ny : {3u, 7u, 20u}) {
                const auto field = random_vector(rng2, nx * ny, 1.0);
                const double ref = k::scalar::stencil5_residual_max(field.data(), nx, ny, 361.0,
                                                                    361.0, -1285.0);
                const double got =
                    k::stencil5_residual_max(field.data(), nx, ny, 361.0, 361.0, -1285.0);
                CHECK(got == ref);
            }
        }
    }
}

TEST_CASE("axpy handles tails and zero length") {
    std::vector<double> y{1.0, 2.0, 3.0};
    std::vector<double> x{10.0, 20.0, 30.0};
    k::axpy(0.5, x.data(), y.data(), 3);
    CHECK(y == std::vector<double>{6.0, 12.0, 18.0});
    k::axpy(123.0, x.data(), y.data(), 0);
    CHECK(y == std::vector<double>{6.0, 12.0, 18.0});
}

TEST_CASE("cn_rhs applies the second-difference stencil to the interior") {
    // u = x^2 on a uniform grid has exact second difference 2 h^2.
    const std::size_t n = 9;
    std::vector<double> u(n), out(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = static_cast<double>(j * j);
    k::cn_rhs(u.data(), n, 0.25, out.data());
    CHECK(out[0] == u[0]);
    CHECK(out[n - 1] == u[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        CHECK(out[j] == doctest::Approx(u[j] + 0.25 * 2.0));
    }
}
