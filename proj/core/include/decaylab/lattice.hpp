#pragma once

// Finite tight-binding chain with the impurity attached, diagonalized exactly.
// Matrix index 0 is the impurity |d>; chain sites are 1..n_sites.

#include "decaylab/model.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace decaylab {

inline constexpr int kMinLatticeSites = 64;
inline constexpr int kEchoMargin = 512;

enum class Boundary { Periodic, Open };

struct FiniteLattice {
    ModelParams params;
    int n_sites = 0;
    Boundary boundary = Boundary::Open;

    /// Periodic ring for Model I, open chain for Model II. Requires
    /// n_sites >= kMinLatticeSites (and even for the ring).
    static FiniteLattice make(const ModelParams& p, int n_sites);

    /// Chain site (1-based) carrying the impurity coupling: n/2 on the ring,
    /// 1 on the open chain.
    int coupled_site() const noexcept;
};

/// Hopping -1/2 between neighbours (plus the wrap link on the ring), eps_d on
/// the impurity diagonal, -g between the impurity and the coupled site.
Eigen::MatrixXd build_hamiltonian(const FiniteLattice& lat);
Eigen::SparseMatrix<double> build_hamiltonian_sparse(const FiniteLattice& lat);

struct EigenSystem {
    std::vector<double> energies;          // ascending
    std::vector<double> impurity_weights;  // |<d|E_j>|^2
    int n_sites = 0;
};

enum class EigenBackend {
    // Symmetry-reduced tridiagonal chain seen by |d>, QL iteration tracking
    // only the impurity row of the eigenvectors. O(n^2); lists only states
    // with a possibly non-zero impurity overlap.
    Tridiagonal,
    // Full dense symmetric eigensolver; every eigenvalue. O(n^3).
    Dense,
};

/// Throws SolverError on eigensolver failure and DomainError when the dense
/// backend is asked for more than 10^4 rows.
EigenSystem diagonalize(const FiniteLattice& lat, EigenBackend backend = EigenBackend::Tridiagonal);

/// Time up to which the finite chain reproduces the infinite one: the
/// boundary echo of the wavefront (speed <= 1) stays away from the impurity.
double reliable_time(int n_sites) noexcept;

/// Smallest n with reliable_time(n) >= t_max, i.e. ceil(2 t_max + 512).
int min_lattice_size(double t_max);

/// Next power of two >= max(1024, min_lattice_size(t_max)).
int default_lattice_size(double t_max);

/// A(t) = sum_j w_j exp(-i E_j t). Throws TimeRangeError past the reliability
/// horizon unless enforce_horizon is false.
ComplexEnergy survival_amplitude_exact(const EigenSystem& es, double t, bool enforce_horizon = true);

}  // namespace decaylab
