#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bilem {

/// General banded matrix with LU factorization and partial pivoting
/// (LAPACK band layout with kl fill-in rows).
class BandMatrix {
public:
    BandMatrix(int dim, int kl, int ku);

    int dim() const { return n_; }

    /// Entry access inside the band; out-of-band writes throw.
    void set(int i, int j, double v) { at(i, j) = v; }
    void add(int i, int j, double v) { at(i, j) += v; }
    double get(int i, int j) const;

    /// In-place LU with row pivoting.  Near-zero pivots are nudged to a
    /// tiny value so bordered solves stay finite next to folds.
    void factor();
    bool factored() const { return factored_; }

    /// Solves A x = b using the factorization; b is overwritten.
    void solve(std::span<double> b) const;

private:
    double& at(int i, int j);
    int n_, kl_, ku_, ld_;
    std::vector<double> ab_;
    std::vector<int> piv_;
    bool factored_ = false;
};

}  // namespace bilem
