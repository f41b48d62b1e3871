#pragma once

#include <optional>
#include <span>

#include "derlpso/matrix.hpp"

namespace derlpso {

/// Space-time grid over [0,1] x [0,1] for the parabolic problems.
struct Grid1D {
    int x_points = 10;
    int t_points = 10;

    double dx() const { return 1.0 / (x_points - 1); }
    double dt() const { return 1.0 / (t_points - 1); }
    double x_at(int j) const { return static_cast<double>(j) * dx(); }
};

/// Spatial grid over [0,1] x [0,1] for the Helmholtz problem.
struct Grid2D {
    int x_points = 10;
    int y_points = 10;

    double hx() const { return 1.0 / (x_points - 1); }
    double hy() const { return 1.0 / (y_points - 1); }
};

/// Solution samples: t-by-x for the parabolic problems, x-by-y for Helmholtz.
using Field = RowMatrix;

/// Default initial data u(x,0) = sin(pi x) for the heat problem.
double heat_initial(double x);

/// Default initial data: Gaussian pulse exp(-100 (x - 0.3)^2).
double convection_initial(double x);

/// Heat equation u_t = alpha u_xx, Crank-Nicolson in time, homogeneous
/// Dirichlet boundaries for t > 0; the first row is the initial data. The
/// two-argument form uses heat_initial. Returns nullopt for alpha <= 0 or a
/// non-finite solve.
std::optional<Field> solve_heat_1d(double alpha, const Grid1D& grid);
std::optional<Field> solve_heat_1d(double alpha, const Grid1D& grid,
                                   std::span<const double> initial);

/// Transient convection-diffusion u_t + v u_x = D u_xx, backward Euler with
/// central diffusion and sign-upwinded convection, homogeneous Dirichlet
/// boundaries; the first row is the initial data (default convection_initial).
/// Returns nullopt for D <= 0 or a non-finite solve.
std::optional<Field> solve_convection_diffusion_1d(double diffusion, double velocity,
                                                   const Grid1D& grid);
std::optional<Field> solve_convection_diffusion_1d(double diffusion, double velocity,
                                                   const Grid1D& grid,
                                                   std::span<const double> initial);

/// Wavenumber k = 2 pi / lambda.
double helmholtz_wavenumber(double lambda);

/// Manufactured solution sin(k x / sqrt 2) * sin(k y / sqrt 2); it satisfies
/// u_xx + u_yy + k^2 u = 0 exactly and supplies the Dirichlet boundary data.
double helmholtz_manufactured(double x, double y, double k);

/// True when k^2 sits within relative 1e-8 of an eigenvalue of the discrete
/// Dirichlet Laplacian on this grid, i.e. the linear system is (near-)
/// singular.
bool helmholtz_near_singular(double lambda, const Grid2D& grid);

/// Helmholtz equation u_xx + u_yy + k^2 u = 0 on the unit square, five-point
/// stencil with boundary data from the manufactured solution, direct banded
/// solve. Returns nullopt for lambda <= 0, near-singular systems, or a
/// non-finite solve.
std::optional<Field> solve_helmholtz_2d(double lambda, const Grid2D& grid);

}  // namespace derlpso
