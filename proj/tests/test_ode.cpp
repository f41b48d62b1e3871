#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "derlpso/ode.hpp"
#include "derlpso/problem.hpp"
#include "oracles.hpp"

using namespace derlpso;

TEST_CASE("lotka-volterra right-hand side") {
    std::vector<double> deriv(2);
    rhs_lotka_volterra(std::vector{0.0, 0.0}, std::vector{0.4, 1.3, 1.0, 1.0}, deriv);
    CHECK(deriv == std::vector{0.0, 0.0});

    // Interior equilibrium (gamma/delta, alpha/beta).
    const double alpha = 0.4, beta = 1.3, delta = 1.0, gamma = 1.0;
    rhs_lotka_volterra(std::vector{gamma / delta, alpha / beta},
                       std::vector{alpha, beta, delta, gamma}, deriv);
    CHECK(deriv[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(deriv[1] == doctest::Approx(0.0).epsilon(1e-14));

    rhs_lotka_volterra(std::vector{0.9, 0.9}, std::vector{0.4, 1.3, 1.0, 1.0}, deriv);
    CHECK(deriv[0] == doctest::Approx(0.36 - 1.053));
    CHECK(deriv[1] == doctest::Approx(0.81 - 0.9));
}

TEST_CASE("lorenz right-hand side") {
    std::vector<double> deriv(3);
    rhs_lorenz(std::vector{0.0, 0.0, 0.0}, std::vector{2.0, 1.0, 4.0}, deriv);
    CHECK(deriv == std::vector{0.0, 0.0, 0.0});

    rhs_lorenz(std::vector{0.0, 1.0, 1.25}, std::vector{2.0, 1.0, 4.0}, deriv);
    CHECK(deriv == std::vector{2.0, -1.0, -5.0});

    // At (1, 1, r-1) with beta = 1: dz/dt = -(r-1) + 1.
    const double r = 3.5;
    rhs_lorenz(std::vector{1.0, 1.0, r - 1.0}, std::vector{7.0, r, 1.0}, deriv);
    CHECK(deriv[2] == doctest::Approx(-(r - 1.0) + 1.0));
}

TEST_CASE("fitzhugh-nagumo right-hand side") {
    std::vector<double> deriv(2);
    const std::vector<double> constants{3.0, 0.0};

    rhs_fitzhugh_nagumo(std::vector{0.0, 0.0}, std::vector{0.0, 0.8}, constants, deriv);
    CHECK(deriv == std::vector{0.0, 0.0});

    rhs_fitzhugh_nagumo(std::vector{0.0, 0.0}, std::vector{0.7, 0.8}, constants, deriv);
    CHECK(deriv[0] == 0.0);
    CHECK(deriv[1] == doctest::Approx(0.7 / 3.0));

    // u^3/3 = u at u = sqrt(3): the cubic term cancels the linear one.
    rhs_fitzhugh_nagumo(std::vector{std::sqrt(3.0), 0.0}, std::vector{0.7, 0.8}, constants,
                        deriv);
    CHECK(deriv[0] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("integrate reproduces exponential decay to 1e-8") {
    const TimeGrid grid{0.0, 1.0, 2};
    IntegratorConfig config;
    auto result = integrate_adaptive(
        [](std::span<const double> y, std::span<double> dydt) { dydt[0] = -y[0]; }, 1,
        std::vector{1.0}, grid, config);
    REQUIRE(result.has_value());
    CHECK(result->states.at(1, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("integrate matches a fixed-step RK4 oracle on the lorenz system") {
    OdeSystem system;
    system.kind = OdeKind::Lorenz;
    system.params = {2.0, 1.0, 4.0};
    const TimeGrid grid{0.0, 4.0, 10};
    IntegratorConfig config;
    auto result = integrate(system, std::vector{0.0, 1.0, 1.25}, grid, config);
    REQUIRE(result.has_value());
    const RowMatrix reference = oracles::rk4_reference(system, std::vector{0.0, 1.0, 1.25},
                                                       grid, 1e-5);
    CHECK(oracles::max_abs_diff(result->states, reference) < 1e-6);
}

TEST_CASE("blow-up guard: absurd parameters never produce a non-finite trajectory") {
    OdeSystem system;
    system.kind = OdeKind::LotkaVolterra;
    system.params = {1e9, 1.0, 1.0, 1.0};
    const TimeGrid grid{0.0, 4.0, 10};
    IntegratorConfig config;
    auto result = integrate(system, std::vector{0.9, 0.9}, grid, config);
    if (result) {
        for (double v : result->states.data) CHECK(std::isfinite(v));
    } else {
        CHECK(true);  // solver failure is the expected outcome
    }
}

TEST_CASE("integrate is deterministic") {
    OdeSystem system;
    system.kind = OdeKind::FitzHughNagumo;
    system.params = {0.7, 0.8};
    system.fixed_constants = {3.0, 0.0};
    const TimeGrid grid{0.0, 20.0, 10};
    IntegratorConfig config;
    auto a = integrate(system, std::vector{0.0, 0.0}, grid, config);
    auto b = integrate(system, std::vector{0.0, 0.0}, grid, config);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->states.data == b->states.data);
}

namespace {

OdeSystem random_benchmark_system(Equation equation, Rng& rng) {
    OdeSystem system;
    const ParameterPrior prior = default_prior(equation, 0.5);
    system.params = sample_parameters(prior, rng);
    switch (equation) {
        case Equation::LotkaVolterra:
            system.kind = OdeKind::LotkaVolterra;
            break;
        case Equation::Lorenz:
            system.kind = OdeKind::Lorenz;
            break;
        default:
            system.kind = OdeKind::FitzHughNagumo;
            system.fixed_constants = {3.0, 0.0};
            break;
    }
    return system;
}

struct BenchmarkCase {
    Equation equation;
    std::vector<double> init;
    TimeGrid grid;
};

const BenchmarkCase kCases[] = {
    {Equation::LotkaVolterra, {0.9, 0.9}, {0.0, 4.0, 10}},
    {Equation::Lorenz, {0.0, 1.0, 1.25}, {0.0, 4.0, 10}},
    {Equation::FitzHughNagumo, {0.0, 0.0}, {0.0, 20.0, 10}},
};

}  // namespace

TEST_CASE("halving both tolerances never increases the oracle error") {
    Rng rng(21);
    int case_index = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const BenchmarkCase& bench = kCases[case_index];
        case_index = (case_index + 1) % 3;
        OdeSystem system = random_benchmark_system(bench.equation, rng);

        const RowMatrix reference =
            oracles::rk4_reference(system, bench.init, bench.grid, 1e-4);

        IntegratorConfig coarse;
        IntegratorConfig fine;
        fine.rel_tol = coarse.rel_tol / 2.0;
        fine.abs_tol = coarse.abs_tol / 2.0;
        auto coarse_run = integrate(system, bench.init, bench.grid, coarse);
        auto fine_run = integrate(system, bench.init, bench.grid, fine);
        REQUIRE(coarse_run.has_value());
        REQUIRE(fine_run.has_value());
        const double coarse_err = oracles::max_abs_diff(coarse_run->states, reference);
        const double fine_err = oracles::max_abs_diff(fine_run->states, reference);
        // Tiny absolute slack covers roundoff at the accuracy floor.
        CHECK(fine_err <= coarse_err + 1e-13);
    }
}

TEST_CASE("lotka-volterra flow stays positive for positive data") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        OdeSystem system = random_benchmark_system(Equation::LotkaVolterra, rng);
        const TimeGrid grid{0.0, 4.0, 25};
        IntegratorConfig config;
        auto result = integrate(system, std::vector{0.9, 0.9}, grid, config);
        REQUIRE(result.has_value());
        for (double v : result->states.data) CHECK(v > -1e-9);
    }
}
