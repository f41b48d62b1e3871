#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "derlpso/matrix.hpp"

namespace derlpso {

enum class OdeKind { LotkaVolterra, Lorenz, FitzHughNagumo };

/// A benchmark ODE with its candidate parameters. FitzHugh-Nagumo carries two
/// fixed constants [gamma, xi] that are not estimated.
struct OdeSystem {
    OdeKind kind = OdeKind::LotkaVolterra;
    std::vector<double> params;
    std::vector<double> fixed_constants;  // FHN only: [gamma, xi]

    int state_dim() const;
    int param_dim() const;

    /// Derivative at `state`, written to `deriv` (both state_dim long).
    void rhs(std::span<const double> state, std::span<double> deriv) const;
};

int ode_state_dim(OdeKind kind);
int ode_param_dim(OdeKind kind);

/// Predator-prey: dx/dt = a*x - b*x*y, dy/dt = d*x*y - g*y with
/// params [a, b, d, g] and state [x, y].
void rhs_lotka_volterra(std::span<const double> state, std::span<const double> params,
                        std::span<double> deriv);

/// Lorenz system with params [sigma, r, beta] and state [x, y, z]:
/// [sigma*(y-x), r*x - x*z - y, -beta*z + x*y].
void rhs_lorenz(std::span<const double> state, std::span<const double> params,
                std::span<double> deriv);

/// FitzHugh-Nagumo with params [theta0, theta1], constants [gamma, xi],
/// state [u, v]: du/dt = gamma*(u - u^3/3 + v) + xi,
/// dv/dt = -(1/gamma)*(u - theta0 + theta1*v).
void rhs_fitzhugh_nagumo(std::span<const double> state, std::span<const double> params,
                         std::span<const double> constants, std::span<double> deriv);

/// Evenly spaced output times including both endpoints.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int points = 2;

    double time_at(int i) const {
        return t_start + (t_end - t_start) * static_cast<double>(i) /
                             static_cast<double>(points - 1);
    }
};

struct Trajectory {
    std::vector<double> times;
    RowMatrix states;  // points x state_dim
};

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int max_steps = 100000;
    double initial_step = 0.0;  // 0 = choose automatically
};

namespace ode_detail {

// Dormand-Prince 5(4) tableau. b is the 5th-order weight row (also the last
// stage row, so k7 is reusable as the next step's k1); e = b - bhat feeds the
// embedded 4th-order error estimate.
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

/// Starting step size from the scaled magnitudes of the state, its
/// derivative, and a one-Euler-step probe of the derivative's change.
template <typename Rhs>
double initial_step(Rhs&& rhs, const std::vector<double>& y0, const std::vector<double>& f0,
                    std::vector<double>& ytmp, std::vector<double>& ftmp, double span_len,
                    const IntegratorConfig& config) {
    const std::size_t n = y0.size();
    double d0_sq = 0.0, d1_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = config.abs_tol + config.rel_tol * std::abs(y0[i]);
        const double sy = y0[i] / scale;
        const double sf = f0[i] / scale;
        d0_sq += sy * sy;
        d1_sq += sf * sf;
    }
    const double d0 = std::sqrt(d0_sq / static_cast<double>(n));
    const double d1 = std::sqrt(d1_sq / static_cast<double>(n));
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span_len);

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y0[i] + h0 * f0[i];
    rhs(std::span<const double>(ytmp), std::span<double>(ftmp));
    double d2_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = config.abs_tol + config.rel_tol * std::abs(y0[i]);
        const double df = (ftmp[i] - f0[i]) / scale;
        d2_sq += df * df;
    }
    const double d2 = std::sqrt(d2_sq / static_cast<double>(n)) / h0;

    const double d_max = std::max(d1, d2);
    double h1;
    if (d_max <= 1e-15 || !std::isfinite(d_max)) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / d_max, 0.2);
    }
    return std::min({100.0 * h0, h1, span_len});
}

}  // namespace ode_detail

/// Adaptive Dormand-Prince 5(4) integration to each grid time (steps are
/// capped at the next output time, no interpolation). Returns nullopt when
/// the step budget runs out, the step size underflows, or any state magnitude
/// exceeds 1e12; a returned trajectory is always finite.
std::optional<Trajectory> integrate(const OdeSystem& system, std::span<const double> init_state,
                                    const TimeGrid& grid, const IntegratorConfig& config);

/// Same integrator over an arbitrary autonomous right-hand side
/// rhs(state, deriv). Kept generic so convergence checks can drive it with
/// systems that have closed-form solutions.
template <typename Rhs>
std::optional<Trajectory> integrate_adaptive(Rhs&& rhs, int dim,
                                             std::span<const double> init_state,
                                             const TimeGrid& grid,
                                             const IntegratorConfig& config) {
    namespace detail = ode_detail;
    constexpr double kBlowUp = 1e12;
    const auto n = static_cast<std::size_t>(dim);

    Trajectory out;
    out.times.resize(static_cast<std::size_t>(grid.points));
    out.states = RowMatrix(static_cast<std::size_t>(grid.points), n);

    std::vector<double> y(init_state.begin(), init_state.end());
    for (double v : y) {
        if (!std::isfinite(v) || std::abs(v) > kBlowUp) return std::nullopt;
    }
    out.times[0] = grid.t_start;
    std::copy(y.begin(), y.end(), out.states.row(0));
    if (grid.points < 2) return out;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> ytmp(n), ynew(n);
    rhs(std::span<const double>(y), std::span<double>(k1));

    const double span_len = grid.t_end - grid.t_start;
    double h = config.initial_step > 0.0
                   ? config.initial_step
                   : detail::initial_step(rhs, y, k1, ytmp, k2, span_len, config);
    double t = grid.t_start;
    int steps = 0;

    for (int i = 1; i < grid.points; ++i) {
        const double t_target = grid.time_at(i);
        while (t < t_target) {
            if (++steps > config.max_steps) return std::nullopt;
            bool capped = false;
            if (h >= t_target - t) {
                h = t_target - t;
                capped = true;
            }
            if (h < 1e-14 * std::max(std::abs(t), std::abs(span_len))) return std::nullopt;

            for (std::size_t d = 0; d < n; ++d) ytmp[d] = y[d] + h * detail::a21 * k1[d];
            rhs(std::span<const double>(ytmp), std::span<double>(k2));
            for (std::size_t d = 0; d < n; ++d)
                ytmp[d] = y[d] + h * (detail::a31 * k1[d] + detail::a32 * k2[d]);
            rhs(std::span<const double>(ytmp), std::span<double>(k3));
            for (std::size_t d = 0; d < n; ++d)
                ytmp[d] =
                    y[d] + h * (detail::a41 * k1[d] + detail::a42 * k2[d] + detail::a43 * k3[d]);
            rhs(std::span<const double>(ytmp), std::span<double>(k4));
            for (std::size_t d = 0; d < n; ++d)
                ytmp[d] = y[d] + h * (detail::a51 * k1[d] + detail::a52 * k2[d] +
                                      detail::a53 * k3[d] + detail::a54 * k4[d]);
            rhs(std::span<const double>(ytmp), std::span<double>(k5));
            for (std::size_t d = 0; d < n; ++d)
                ytmp[d] = y[d] + h * (detail::a61 * k1[d] + detail::a62 * k2[d] +
                                      detail::a63 * k3[d] + detail::a64 * k4[d] +
                                      detail::a65 * k5[d]);
            rhs(std::span<const double>(ytmp), std::span<double>(k6));
            for (std::size_t d = 0; d < n; ++d)
                ynew[d] = y[d] + h * (detail::b1 * k1[d] + detail::b3 * k3[d] +
                                      detail::b4 * k4[d] + detail::b5 * k5[d] +
                                      detail::b6 * k6[d]);
            rhs(std::span<const double>(ynew), std::span<double>(k7));

            double err_sq = 0.0;
            for (std::size_t d = 0; d < n; ++d) {
                const double est = h * (detail::e1 * k1[d] + detail::e3 * k3[d] +
                                        detail::e4 * k4[d] + detail::e5 * k5[d] +
                                        detail::e6 * k6[d] + detail::e7 * k7[d]);
                const double scale =
                    config.abs_tol +
                    config.rel_tol * std::max(std::abs(y[d]), std::abs(ynew[d]));
                const double ratio = est / scale;
                err_sq += ratio * ratio;
            }
            const double err = std::sqrt(err_sq / static_cast<double>(n));

            if (std::isfinite(err) && err <= 1.0) {
                t = capped ? t_target : t + h;
                y.swap(ynew);
                k1.swap(k7);  // first-same-as-last
                for (double v : y) {
                    if (!std::isfinite(v) || std::abs(v) > kBlowUp) return std::nullopt;
                }
                const double factor =
                    err == 0.0 ? 5.0
                               : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                h *= factor;
            } else {
                const double factor =
                    std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
                h *= factor;
            }
        }
        out.times[static_cast<std::size_t>(i)] = t_target;
        std::copy(y.begin(), y.end(), out.states.row(static_cast<std::size_t>(i)));
    }
    return out;
}

}  // namespace derlpso
