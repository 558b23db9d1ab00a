#pragma once

// Survival amplitude by Chebyshev expansion of exp(-iHt) on the sparse
// Hamiltonian, without diagonalization.

#include "decaylab/lattice.hpp"

#include <vector>

namespace decaylab {

/// J_0(x) .. J_{k_max}(x) by Miller's downward recurrence, normalized with
/// J_0 + 2 sum J_{2k} = 1. Requires x >= 0.
std::vector<double> bessel_j_sequence(int k_max, double x);

class ChebyshevPropagator {
public:
    /// Rescales H into [-1, 1] by its Gershgorin bound and precomputes the
    /// moments <d|T_k(H')|d> needed up to |t| = t_max.
    ChebyshevPropagator(const FiniteLattice& lat, double t_max);

    /// <d| exp(-iHt) |d>. Throws DomainError for |t| > t_max and
    /// TimeRangeError past the lattice reliability horizon.
    ComplexEnergy amplitude(double t) const;

    double t_max() const noexcept { return t_max_; }
    int n_sites() const noexcept { return n_sites_; }
    std::size_t moment_count() const noexcept { return moments_.size(); }

private:
    int n_sites_;
    double t_max_;
    double center_;
    double half_width_;
    std::vector<double> moments_;
};

}  // namespace decaylab
