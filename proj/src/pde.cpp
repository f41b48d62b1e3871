#include "derlpso/pde.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "derlpso/banded.hpp"
#include "derlpso/kernels.hpp"

namespace derlpso {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool all_finite(const Field& field) {
    for (double v : field.data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace

double heat_initial(double x) { return std::sin(kPi * x); }

double convection_initial(double x) { return std::exp(-100.0 * (x - 0.3) * (x - 0.3)); }

std::optional<Field> solve_heat_1d(double alpha, const Grid1D& grid) {
    std::vector<double> initial(static_cast<std::size_t>(grid.x_points));
    for (int j = 0; j < grid.x_points; ++j)
        initial[static_cast<std::size_t>(j)] = heat_initial(grid.x_at(j));
    return solve_heat_1d(alpha, grid, initial);
}

std::optional<Field> solve_heat_1d(double alpha, const Grid1D& grid,
                                   std::span<const double> initial) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) return std::nullopt;
    const auto nx = static_cast<std::size_t>(grid.x_points);
    const auto nt = static_cast<std::size_t>(grid.t_points);
    const std::size_t m = nx - 2;  // interior unknowns
    const double r = alpha * grid.dt() / (2.0 * grid.dx() * grid.dx());

    Field u(nt, nx);
    std::copy(initial.begin(), initial.end(), u.row(0));

    std::vector<double> sub(m - 1), diag(m), super(m - 1), rhs(m);
    std::vector<double> rhs_full(nx);
    for (std::size_t n = 1; n < nt; ++n) {
        kernels::cn_rhs(u.row(n - 1), nx, r, rhs_full.data());
        std::copy(rhs_full.begin() + 1, rhs_full.end() - 1, rhs.begin());
        std::fill(sub.begin(), sub.end(), -r);
        std::fill(super.begin(), super.end(), -r);
        std::fill(diag.begin(), diag.end(), 1.0 + 2.0 * r);
        if (!solve_tridiagonal(sub, diag, super, rhs)) return std::nullopt;
        double* row = u.row(n);
        row[0] = 0.0;
        std::copy(rhs.begin(), rhs.end(), row + 1);
        row[nx - 1] = 0.0;
    }
    if (!all_finite(u)) return std::nullopt;
    return u;
}

std::optional<Field> solve_convection_diffusion_1d(double diffusion, double velocity,
                                                   const Grid1D& grid) {
    std::vector<double> initial(static_cast<std::size_t>(grid.x_points));
    for (int j = 0; j < grid.x_points; ++j)
        initial[static_cast<std::size_t>(j)] = convection_initial(grid.x_at(j));
    return solve_convection_diffusion_1d(diffusion, velocity, grid, initial);
}

std::optional<Field> solve_convection_diffusion_1d(double diffusion, double velocity,
                                                   const Grid1D& grid,
                                                   std::span<const double> initial) {
    if (!(diffusion > 0.0) || !std::isfinite(diffusion) || !std::isfinite(velocity))
        return std::nullopt;
    const auto nx = static_cast<std::size_t>(grid.x_points);
    const auto nt = static_cast<std::size_t>(grid.t_points);
    const std::size_t m = nx - 2;
    const double dx = grid.dx();
    const double dt = grid.dt();
    const double diffuse = diffusion * dt / (dx * dx);
    const double courant = velocity * dt / dx;

    // Backward Euler, upwinded convection: the donor cell sits on the side
    // the flow comes from.
    const double coef_sub = -diffuse - (velocity >= 0.0 ? courant : 0.0);
    const double coef_diag = 1.0 + 2.0 * diffuse + std::fabs(courant);
    const double coef_super = -diffuse + (velocity < 0.0 ? courant : 0.0);

    Field u(nt, nx);
    std::copy(initial.begin(), initial.end(), u.row(0));

    std::vector<double> sub(m - 1), diag(m), super(m - 1), rhs(m);
    for (std::size_t n = 1; n < nt; ++n) {
        const double* prev = u.row(n - 1);
        std::copy(prev + 1, prev + 1 + m, rhs.begin());
        // First/last interior equations see the (zero) boundary values, so
        // nothing moves to the right-hand side.
        std::fill(sub.begin(), sub.end(), coef_sub);
        std::fill(super.begin(), super.end(), coef_super);
        std::fill(diag.begin(), diag.end(), coef_diag);
        if (!solve_tridiagonal(sub, diag, super, rhs)) return std::nullopt;
        double* row = u.row(n);
        row[0] = 0.0;
        std::copy(rhs.begin(), rhs.end(), row + 1);
        row[nx - 1] = 0.0;
    }
    if (!all_finite(u)) return std::nullopt;
    return u;
}

double helmholtz_wavenumber(double lambda) { return 2.0 * kPi / lambda; }

double helmholtz_manufactured(double x, double y, double k) {
    const double s = k / std::sqrt(2.0);
    return std::sin(s * x) * std::sin(s * y);
}

bool helmholtz_near_singular(double lambda, const Grid2D& grid) {
    const double k2 = helmholtz_wavenumber(lambda) * helmholtz_wavenumber(lambda);
    const double cx = 4.0 / (grid.hx() * grid.hx());
    const double cy = 4.0 / (grid.hy() * grid.hy());
    for (int p = 1; p <= grid.x_points - 2; ++p) {
        const double sx = std::sin(0.5 * kPi * p / (grid.x_points - 1));
        const double ex = cx * sx * sx;
        for (int q = 1; q <= grid.y_points - 2; ++q) {
            const double sy = std::sin(0.5 * kPi * q / (grid.y_points - 1));
            const double eig = ex + cy * sy * sy;
            if (std::fabs(eig - k2) <= 1e-8 * std::max(eig, k2)) return true;
        }
    }
    return false;
}

std::optional<Field> solve_helmholtz_2d(double lambda, const Grid2D& grid) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) return std::nullopt;
    if (helmholtz_near_singular(lambda, grid)) return std::nullopt;

    const int nx = grid.x_points;
    const int ny = grid.y_points;
    const double k = helmholtz_wavenumber(lambda);
    const double k2 = k * k;
    const double cx = 1.0 / (grid.hx() * grid.hx());
    const double cy = 1.0 / (grid.hy() * grid.hy());
    const double diag = k2 - 2.0 * cx - 2.0 * cy;

    Field u(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
    for (int i = 0; i < nx; ++i) {
        const double x = i * grid.hx();
        for (int j = 0; j < ny; ++j) {
            const bool boundary = i == 0 || i == nx - 1 || j == 0 || j == ny - 1;
            if (boundary)
                u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    helmholtz_manufactured(x, j * grid.hy(), k);
        }
    }

    // Interior unknowns, row-major in (i, j); bandwidth ny-2.
    const int mi = nx - 2;
    const int mj = ny - 2;
    const int unknowns = mi * mj;
    BandedMatrix a(unknowns, mj, mj);
    std::vector<double> rhs(static_cast<std::size_t>(unknowns), 0.0);

    auto index = [mj](int i, int j) { return (i - 1) * mj + (j - 1); };
    for (int i = 1; i <= mi; ++i) {
        for (int j = 1; j <= mj; ++j) {
            const int row = index(i, j);
            a.at(row, row) = diag;
            double b = 0.0;
            if (i > 1)
                a.at(row, index(i - 1, j)) = cx;
            else
                b -= cx * u.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j));
            if (i < mi)
                a.at(row, index(i + 1, j)) = cx;
            else
                b -= cx * u.at(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(j));
            if (j > 1)
                a.at(row, index(i, j - 1)) = cy;
            else
                b -= cy * u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j - 1));
            if (j < mj)
                a.at(row, index(i, j + 1)) = cy;
            else
                b -= cy * u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j + 1));
            rhs[static_cast<std::size_t>(row)] = b;
        }
    }

    if (!a.factorize()) return std::nullopt;
    a.solve(rhs);

    for (int i = 1; i <= mi; ++i) {
        for (int j = 1; j <= mj; ++j) {
            u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                rhs[static_cast<std::size_t>(index(i, j))];
        }
    }
    if (!all_finite(u)) return std::nullopt;

    // Direct solves leave the discrete residual at roundoff scale; anything
    // larger means the factorization hit an unusable pivot sequence.
    const double scale = 2.0 * cx + 2.0 * cy + std::fabs(diag);
    const double residual = kernels::stencil5_residual_max(
        u.data.data(), static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), cx, cy, diag);
    if (residual > 1e-6 * scale) return std::nullopt;
    return u;
}

}  // namespace derlpso
