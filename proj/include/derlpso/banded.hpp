#pragma once

#include <span>
#include <vector>

namespace derlpso {

/// Thomas algorithm for a tridiagonal system; all spans have length n except
/// sub/super (n-1). Overwrites its inputs. Returns false on a vanishing
/// pivot (the parabolic solvers only build diagonally dominant systems, so
/// that signals non-finite coefficients rather than genuine breakdown).
bool solve_tridiagonal(std::span<double> sub, std::span<double> diag, std::span<double> super,
                       std::span<double> rhs);

/// General banded matrix with kl sub- and ku superdiagonals in LAPACK-style
/// column-major band storage (kl extra rows for pivot fill-in). Factorizes
/// in place with partial pivoting.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int n() const { return n_; }

    /// Entry A(i, j); only positions with -ku <= i-j <= kl are stored.
    double& at(int i, int j) { return ab_[band_index(i, j)]; }
    double at(int i, int j) const { return ab_[band_index(i, j)]; }

    /// LU with partial pivoting. Returns false when a pivot column is
    /// numerically zero (singular to working precision).
    bool factorize();

    /// Solves A x = b in place. Requires a successful factorize().
    void solve(std::span<double> b) const;

private:
    std::size_t band_index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(ldab_) +
               static_cast<std::size_t>(kl_ + ku_ + i - j);
    }

    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
    std::vector<int> pivots_;
    bool factored_ = false;
};

}  // namespace derlpso
