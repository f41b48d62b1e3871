#include "derlpso/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "derlpso/kernels.hpp"

namespace derlpso {

bool is_ode(Equation equation) {
    switch (equation) {
        case Equation::LotkaVolterra:
        case Equation::Lorenz:
        case Equation::FitzHughNagumo:
            return true;
        default:
            return false;
    }
}

std::string_view equation_id(Equation equation) {
    switch (equation) {
        case Equation::LotkaVolterra:
            return "lotka-volterra";
        case Equation::Lorenz:
            return "lorenz";
        case Equation::FitzHughNagumo:
            return "fitzhugh-nagumo";
        case Equation::Heat:
            return "heat";
        case Equation::ConvectionDiffusion:
            return "convection-diffusion";
        case Equation::Helmholtz:
            return "helmholtz";
    }
    return "";
}

std::optional<Equation> parse_equation(std::string_view id) {
    for (Equation eq : kAllEquations) {
        if (equation_id(eq) == id) return eq;
    }
    return std::nullopt;
}

int equation_param_count(Equation equation) {
    switch (equation) {
        case Equation::LotkaVolterra:
            return 4;
        case Equation::Lorenz:
            return 3;
        case Equation::FitzHughNagumo:
        case Equation::ConvectionDiffusion:
            return 2;
        case Equation::Heat:
        case Equation::Helmholtz:
            return 1;
    }
    return 0;
}

const std::vector<std::string>& equation_param_names(Equation equation) {
    static const std::vector<std::string> lv{"alpha", "beta", "delta", "gamma"};
    static const std::vector<std::string> lorenz{"sigma", "r", "beta"};
    static const std::vector<std::string> fhn{"theta0", "theta1"};
    static const std::vector<std::string> heat{"alpha"};
    static const std::vector<std::string> cd{"D", "v"};
    static const std::vector<std::string> helm{"lambda"};
    switch (equation) {
        case Equation::LotkaVolterra:
            return lv;
        case Equation::Lorenz:
            return lorenz;
        case Equation::FitzHughNagumo:
            return fhn;
        case Equation::Heat:
            return heat;
        case Equation::ConvectionDiffusion:
            return cd;
        case Equation::Helmholtz:
            return helm;
    }
    return lv;
}

int default_max_iterations(Equation equation) {
    switch (equation) {
        case Equation::LotkaVolterra:
            return 200;
        case Equation::Lorenz:
        case Equation::FitzHughNagumo:
            return 100;
        default:
            return 50;  // the three PDE problems
    }
}

ParameterPrior default_prior(Equation equation, double stddev) {
    ParameterPrior prior;
    auto positive = [&](const char* name, double mean) {
        prior.entries.push_back({name, mean, stddev, 0.0, std::nullopt});
    };
    auto unit_interval = [&](const char* name, double mean) {
        prior.entries.push_back({name, mean, stddev, 0.0, 1.0});
    };
    auto open = [&](const char* name, double mean) {
        prior.entries.push_back({name, mean, stddev, std::nullopt, std::nullopt});
    };
    switch (equation) {
        case Equation::LotkaVolterra:
            positive("alpha", 0.4);
            positive("beta", 1.3);
            positive("delta", 1.0);
            positive("gamma", 1.0);
            break;
        case Equation::Lorenz:
            positive("sigma", 2.0);
            positive("r", 1.0);
            positive("beta", 4.0);
            break;
        case Equation::FitzHughNagumo:
            open("theta0", 0.7);
            open("theta1", 0.8);
            break;
        case Equation::Heat:
            unit_interval("alpha", 0.4);
            break;
        case Equation::ConvectionDiffusion:
            unit_interval("D", 0.5);
            unit_interval("v", 0.5);
            break;
        case Equation::Helmholtz:
            unit_interval("lambda", 0.5);
            break;
    }
    return prior;
}

std::vector<double> sample_parameters(const ParameterPrior& prior, Rng& rng) {
    std::vector<double> params;
    params.reserve(prior.entries.size());
    for (const auto& entry : prior.entries) {
        double draw = 0.0;
        bool accepted = false;
        for (int attempt = 0; attempt < 10000; ++attempt) {
            draw = normal(rng, entry.mean, entry.stddev);
            if (entry.lower && !(draw > *entry.lower)) continue;
            if (entry.upper && !(draw <= *entry.upper)) continue;
            accepted = true;
            break;
        }
        if (!accepted)
            throw std::runtime_error("rejection sampling cap exceeded for parameter " +
                                     entry.name);
        params.push_back(draw);
    }
    return params;
}

Problem make_problem_shell(Equation equation, int points, std::span<const double> fhn_constants) {
    Problem problem;
    problem.equation = equation;
    if (is_ode(equation)) {
        if (points < 2) throw std::invalid_argument("ODE grids need at least 2 time points");
        switch (equation) {
            case Equation::LotkaVolterra:
                problem.initial_state = {0.9, 0.9};
                problem.time_grid = {0.0, 4.0, points};
                break;
            case Equation::Lorenz:
                problem.initial_state = {0.0, 1.0, 1.25};
                problem.time_grid = {0.0, 4.0, points};
                break;
            default:  // FitzHugh-Nagumo
                problem.initial_state = {0.0, 0.0};
                problem.time_grid = {0.0, 20.0, points};
                problem.fixed_constants = fhn_constants.empty()
                                              ? std::vector<double>{3.0, 0.0}
                                              : std::vector<double>(fhn_constants.begin(),
                                                                    fhn_constants.end());
                if (problem.fixed_constants.size() != 2 || problem.fixed_constants[0] == 0.0)
                    throw std::invalid_argument(
                        "FitzHugh-Nagumo needs constants [gamma, xi] with gamma != 0");
                break;
        }
    } else {
        if (points < 3) throw std::invalid_argument("PDE grids need at least 3 points per axis");
        if (equation == Equation::Helmholtz) {
            problem.grid2d = {points, points};
        } else {
            problem.grid1d = {points, points};
        }
    }
    return problem;
}

std::optional<RowMatrix> forward_solve(const Problem& problem, std::span<const double> params,
                                       const IntegratorConfig& integrator) {
    switch (problem.equation) {
        case Equation::LotkaVolterra:
        case Equation::Lorenz:
        case Equation::FitzHughNagumo: {
            OdeSystem system;
            system.kind = problem.equation == Equation::LotkaVolterra ? OdeKind::LotkaVolterra
                          : problem.equation == Equation::Lorenz      ? OdeKind::Lorenz
                                                                      : OdeKind::FitzHughNagumo;
            system.params.assign(params.begin(), params.end());
            system.fixed_constants = problem.fixed_constants;
            auto trajectory = integrate(system, problem.initial_state, problem.time_grid,
                                        integrator);
            if (!trajectory) return std::nullopt;
            return std::move(trajectory->states);
        }
        case Equation::Heat:
            return solve_heat_1d(params[0], problem.grid1d);
        case Equation::ConvectionDiffusion:
            return solve_convection_diffusion_1d(params[0], params[1], problem.grid1d);
        case Equation::Helmholtz:
            return solve_helmholtz_2d(params[0], problem.grid2d);
    }
    return std::nullopt;
}

double mean_squared_error(std::span<const double> a, std::span<const double> b) {
    return kernels::sum_sq_diff(a.data(), b.data(), a.size()) / static_cast<double>(a.size());
}

double evaluate_loss(const Problem& problem, std::span<const double> params,
                     const IntegratorConfig& integrator) {
    const auto solution = forward_solve(problem, params, integrator);
    if (!solution || solution->rows != problem.observed.rows ||
        solution->cols != problem.observed.cols) {
        return std::numeric_limits<double>::infinity();
    }
    return mean_squared_error(solution->data, problem.observed.data);
}

Problem generate_problem(Equation equation, int points, std::uint64_t seed, double prior_stddev,
                         const IntegratorConfig& integrator,
                         std::span<const double> fhn_constants) {
    Problem problem = make_problem_shell(equation, points, fhn_constants);
    problem.seed = seed;
    const ParameterPrior prior = default_prior(equation, prior_stddev);
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto params = sample_parameters(prior, rng);
        auto observed = forward_solve(problem, params, integrator);
        if (observed) {
            problem.true_params = std::move(params);
            problem.observed = std::move(*observed);
            problem.redraws = attempt;
            return problem;
        }
    }
    throw std::runtime_error("could not simulate observations after 100 parameter redraws");
}

}  // namespace derlpso
