#include "derlpso/banded.hpp"

#include <cassert>
#include <cmath>

#include "derlpso/kernels.hpp"

namespace derlpso {

bool solve_tridiagonal(std::span<double> sub, std::span<double> diag, std::span<double> super,
                       std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1])) return false;
        const double w = sub[i - 1] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1])) return false;
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - super[i] * rhs[i + 1]) / diag[i];
    }
    return true;
}

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n),
      kl_(kl),
      ku_(ku),
      ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * kl + ku + 1), 0.0),
      pivots_(static_cast<std::size_t>(n), 0) {
    assert(n >= 1 && kl >= 0 && ku >= 0);
}

bool BandedMatrix::factorize() {
    const int diag_off = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
        double* col_j = ab_.data() + static_cast<std::size_t>(j) * ldab_;
        const int sub_rows = std::min(kl_, n_ - 1 - j);

        int pivot_off = 0;
        double pivot_mag = std::fabs(col_j[diag_off]);
        for (int off = 1; off <= sub_rows; ++off) {
            const double mag = std::fabs(col_j[diag_off + off]);
            if (mag > pivot_mag) {
                pivot_mag = mag;
                pivot_off = off;
            }
        }
        if (pivot_mag == 0.0 || !std::isfinite(pivot_mag)) return false;
        pivots_[static_cast<std::size_t>(j)] = j + pivot_off;

        const int last_col = std::min(j + kl_ + ku_, n_ - 1);
        if (pivot_off != 0) {
            for (int c = j; c <= last_col; ++c) {
                double* col_c = ab_.data() + static_cast<std::size_t>(c) * ldab_;
                const int base = kl_ + ku_ + j - c;
                std::swap(col_c[base], col_c[base + pivot_off]);
            }
        }

        const double pivot = col_j[diag_off];
        for (int off = 1; off <= sub_rows; ++off) col_j[diag_off + off] /= pivot;

        if (sub_rows > 0) {
            for (int c = j + 1; c <= last_col; ++c) {
                double* col_c = ab_.data() + static_cast<std::size_t>(c) * ldab_;
                const int base = kl_ + ku_ + j - c;
                const double m = col_c[base];
                if (m != 0.0) {
                    kernels::axpy(-m, col_j + diag_off + 1, col_c + base + 1,
                                  static_cast<std::size_t>(sub_rows));
                }
            }
        }
    }
    factored_ = true;
    return true;
}

void BandedMatrix::solve(std::span<double> b) const {
    assert(factored_ && static_cast<int>(b.size()) == n_);
    const int diag_off = kl_ + ku_;

    // L y = P b (unit lower triangular, multipliers stored below the diagonal)
    for (int j = 0; j < n_; ++j) {
        const int p = pivots_[static_cast<std::size_t>(j)];
        if (p != j) std::swap(b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(p)]);
        const int sub_rows = std::min(kl_, n_ - 1 - j);
        if (sub_rows > 0) {
            const double* col_j = ab_.data() + static_cast<std::size_t>(j) * ldab_;
            kernels::axpy(-b[static_cast<std::size_t>(j)], col_j + diag_off + 1,
                          b.data() + j + 1, static_cast<std::size_t>(sub_rows));
        }
    }

    // U x = y
    for (int j = n_ - 1; j >= 0; --j) {
        const double* col_j = ab_.data() + static_cast<std::size_t>(j) * ldab_;
        const double x = b[static_cast<std::size_t>(j)] / col_j[diag_off];
        b[static_cast<std::size_t>(j)] = x;
        const int above = std::min(kl_ + ku_, j);
        if (above > 0) {
            kernels::axpy(-x, col_j + diag_off - above, b.data() + j - above,
                          static_cast<std::size_t>(above));
        }
    }
}

}  // namespace derlpso
