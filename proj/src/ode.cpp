#include "derlpso/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace derlpso {

int ode_state_dim(OdeKind kind) {
    switch (kind) {
        case OdeKind::Lorenz:
            return 3;
        case OdeKind::LotkaVolterra:
        case OdeKind::FitzHughNagumo:
            return 2;
    }
    return 0;
}

int ode_param_dim(OdeKind kind) {
    switch (kind) {
        case OdeKind::LotkaVolterra:
            return 4;
        case OdeKind::Lorenz:
            return 3;
        case OdeKind::FitzHughNagumo:
            return 2;
    }
    return 0;
}

int OdeSystem::state_dim() const { return ode_state_dim(kind); }
int OdeSystem::param_dim() const { return ode_param_dim(kind); }

void rhs_lotka_volterra(std::span<const double> state, std::span<const double> params,
                        std::span<double> deriv) {
    const double x = state[0], y = state[1];
    const double a = params[0], b = params[1], d = params[2], g = params[3];
    deriv[0] = a * x - b * x * y;
    deriv[1] = d * x * y - g * y;
}

void rhs_lorenz(std::span<const double> state, std::span<const double> params,
                std::span<double> deriv) {
    const double x = state[0], y = state[1], z = state[2];
    const double sigma = params[0], r = params[1], beta = params[2];
    deriv[0] = sigma * (y - x);
    deriv[1] = r * x - x * z - y;
    deriv[2] = -beta * z + x * y;
}

void rhs_fitzhugh_nagumo(std::span<const double> state, std::span<const double> params,
                         std::span<const double> constants, std::span<double> deriv) {
    const double u = state[0], v = state[1];
    const double theta0 = params[0], theta1 = params[1];
    const double gamma = constants[0], xi = constants[1];
    deriv[0] = gamma * (u - u * u * u / 3.0 + v) + xi;
    deriv[1] = -(1.0 / gamma) * (u - theta0 + theta1 * v);
}

void OdeSystem::rhs(std::span<const double> state, std::span<double> deriv) const {
    switch (kind) {
        case OdeKind::LotkaVolterra:
            rhs_lotka_volterra(state, params, deriv);
            return;
        case OdeKind::Lorenz:
            rhs_lorenz(state, params, deriv);
            return;
        case OdeKind::FitzHughNagumo:
            rhs_fitzhugh_nagumo(state, params, fixed_constants, deriv);
            return;
    }
    throw std::logic_error("unknown ODE kind");
}

std::optional<Trajectory> integrate(const OdeSystem& system, std::span<const double> init_state,
                                    const TimeGrid& grid, const IntegratorConfig& config) {
    return integrate_adaptive(
        [&system](std::span<const double> y, std::span<double> dydt) { system.rhs(y, dydt); },
        system.state_dim(), init_state, grid, config);
}

}  // namespace derlpso
