#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derlpso/matrix.hpp"
#include "derlpso/ode.hpp"
#include "derlpso/pde.hpp"
#include "derlpso/rng.hpp"

namespace derlpso {

enum class Equation {
    LotkaVolterra,
    Lorenz,
    FitzHughNagumo,
    Heat,
    ConvectionDiffusion,
    Helmholtz
};

inline constexpr Equation kAllEquations[] = {
    Equation::LotkaVolterra, Equation::Lorenz,
    Equation::FitzHughNagumo, Equation::Heat,
    Equation::ConvectionDiffusion, Equation::Helmholtz};

bool is_ode(Equation equation);
std::string_view equation_id(Equation equation);
std::optional<Equation> parse_equation(std::string_view id);
int equation_param_count(Equation equation);
const std::vector<std::string>& equation_param_names(Equation equation);

/// Per-equation iteration budget defaults.
int default_max_iterations(Equation equation);

/// Independent normal prior per parameter, with optional rejection interval
/// (lo, hi] enforced by resampling.
struct ParameterPrior {
    struct Entry {
        std::string name;
        double mean = 0.0;
        double stddev = 0.5;
        std::optional<double> lower;  // exclusive
        std::optional<double> upper;  // inclusive
    };
    std::vector<Entry> entries;
};

/// Benchmark priors: positive-truncated for Lotka-Volterra and Lorenz,
/// unconstrained for FitzHugh-Nagumo, (0,1] for the PDE coefficients.
ParameterPrior default_prior(Equation equation, double stddev);

/// One rejection-sampled draw per entry (cap 10000 tries each; exceeding the
/// cap throws std::runtime_error).
std::vector<double> sample_parameters(const ParameterPrior& prior, Rng& rng);

/// A differential-equation model plus the observed solution it generated.
struct Problem {
    Equation equation = Equation::LotkaVolterra;
    std::vector<double> initial_state;    // ODE only
    TimeGrid time_grid;                   // ODE only
    std::vector<double> fixed_constants;  // FitzHugh-Nagumo [gamma, xi]
    Grid1D grid1d;                        // heat / convection-diffusion
    Grid2D grid2d;                        // helmholtz
    RowMatrix observed;
    std::vector<double> true_params;
    std::uint64_t seed = 0;
    int redraws = 0;  // parameter redraws needed before the forward solve succeeded
};

/// Model skeleton with benchmark grids and initial data, no observations yet.
/// `points` is the number of time points for ODEs and the per-axis grid size
/// for PDEs. Throws std::invalid_argument for unusable grid sizes.
Problem make_problem_shell(Equation equation, int points,
                           std::span<const double> fhn_constants = {});

/// Forward solve of the problem's model at the given parameters.
std::optional<RowMatrix> forward_solve(const Problem& problem, std::span<const double> params,
                                       const IntegratorConfig& integrator);

/// Mean squared difference over two equally shaped sample sets.
double mean_squared_error(std::span<const double> a, std::span<const double> b);

/// MSE between the candidate forward solve and the observed data; +infinity
/// when the solver fails.
double evaluate_loss(const Problem& problem, std::span<const double> params,
                     const IntegratorConfig& integrator);

/// Draws true parameters from the prior and simulates observations, redrawing
/// (up to 100 times) whenever the forward solve fails at the drawn truth.
/// Throws std::runtime_error if no draw succeeds.
Problem generate_problem(Equation equation, int points, std::uint64_t seed, double prior_stddev,
                         const IntegratorConfig& integrator,
                         std::span<const double> fhn_constants = {});

}  // namespace derlpso
