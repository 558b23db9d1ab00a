#include "decaylab/lattice.hpp"

#include "decaylab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace decaylab {

namespace {

constexpr double kHop = -0.5;
constexpr int kDenseLimit = 10000;

template <class Emit>
void for_each_entry(const FiniteLattice& lat, Emit&& emit) {
    const int n = lat.n_sites;
    emit(0, 0, lat.params.epsilon_d);
    if (lat.params.g != 0.0) emit(0, lat.coupled_site(), -lat.params.g);
    for (int i = 1; i < n; ++i) emit(i, i + 1, kHop);
    if (lat.boundary == Boundary::Periodic && n > 2) emit(n, 1, kHop);
}

// Tridiagonal matrix (diagonal d, off-diagonal e[i] between i and i+1) whose
// first basis vector is |d> and which spans the orbit of |d> under H.
void impurity_chain(const FiniteLattice& lat, std::vector<double>& d, std::vector<double>& e) {
    const int n = lat.n_sites;
    const double g = lat.params.g;
    if (lat.boundary == Boundary::Open) {
        d.assign(n + 1, 0.0);
        e.assign(n + 1, kHop);
        d[0] = lat.params.epsilon_d;
        e[0] = -g;
        e[n] = 0.0;
        return;
    }
    // Ring: the impurity only sees combinations symmetric about the coupled
    // site: c_0, (c_{-k} + c_{+k})/sqrt(2) for 1 <= k < n/2, and the antipode.
    const int half = n / 2;
    const int dim = half + 2;
    d.assign(dim, 0.0);
    e.assign(dim, kHop);
    d[0] = lat.params.epsilon_d;
    e[0] = -g;
    e[1] = kHop * std::sqrt(2.0);
    e[dim - 2] = kHop * std::sqrt(2.0);
    e[dim - 1] = 0.0;
}

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix;
// `row` holds the first row of the accumulated eigenvector matrix.
void tridiagonal_ql_first_row(std::vector<double>& d, std::vector<double>& e, std::vector<double>& row) {
    const int n = static_cast<int>(d.size());
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == 60) throw SolverError("diagonalize: QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                const double zf = row[i + 1];
                row[i + 1] = s * row[i] + c * zf;
                row[i] = c * row[i] - s * zf;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (true);
    }
}

EigenSystem sorted_system(std::vector<double> energies, std::vector<double> weights, int n_sites) {
    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    EigenSystem es;
    es.n_sites = n_sites;
    es.energies.reserve(order.size());
    es.impurity_weights.reserve(order.size());
    for (std::size_t k : order) {
        es.energies.push_back(energies[k]);
        es.impurity_weights.push_back(weights[k]);
    }
    return es;
}

}  // namespace

FiniteLattice FiniteLattice::make(const ModelParams& p, int n_sites) {
    validate(p);
    if (n_sites < kMinLatticeSites) {
        throw DomainError("FiniteLattice: need at least " + std::to_string(kMinLatticeSites) + " chain sites");
    }
    const Boundary b = p.kind == ModelKind::InfiniteSideCoupled ? Boundary::Periodic : Boundary::Open;
    if (b == Boundary::Periodic && n_sites % 2 != 0) {
        throw DomainError("FiniteLattice: the periodic ring needs an even number of sites");
    }
    return FiniteLattice{p, n_sites, b};
}

int FiniteLattice::coupled_site() const noexcept {
    return boundary == Boundary::Periodic ? std::max(1, n_sites / 2) : 1;
}

Eigen::MatrixXd build_hamiltonian(const FiniteLattice& lat) {
    const int dim = lat.n_sites + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for_each_entry(lat, [&](int i, int j, double v) {
        h(i, j) += v;
        if (i != j) h(j, i) += v;
    });
    return h;
}

Eigen::SparseMatrix<double> build_hamiltonian_sparse(const FiniteLattice& lat) {
    const int dim = lat.n_sites + 1;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(3 * dim);
    for_each_entry(lat, [&](int i, int j, double v) {
        entries.emplace_back(i, j, v);
        if (i != j) entries.emplace_back(j, i, v);
    });
    Eigen::SparseMatrix<double> h(dim, dim);
    h.setFromTriplets(entries.begin(), entries.end());
    return h;
}

EigenSystem diagonalize(const FiniteLattice& lat, EigenBackend backend) {
    if (lat.n_sites < 1) throw DomainError("diagonalize: empty lattice");
    if (backend == EigenBackend::Dense) {
        if (lat.n_sites + 1 > kDenseLimit) {
            throw DomainError("diagonalize: dense backend limited to 10^4 rows");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(lat));
        if (solver.info() != Eigen::Success) throw SolverError("diagonalize: dense eigensolver failed");
        const auto& vals = solver.eigenvalues();
        const auto& vecs = solver.eigenvectors();
        std::vector<double> energies(vals.data(), vals.data() + vals.size());
        std::vector<double> weights(energies.size());
        for (Eigen::Index j = 0; j < vals.size(); ++j) weights[j] = vecs(0, j) * vecs(0, j);
        return sorted_system(std::move(energies), std::move(weights), lat.n_sites);
    }
    if (lat.boundary == Boundary::Periodic && lat.n_sites % 2 != 0) {
        throw DomainError("diagonalize: the reduced ring needs an even number of sites");
    }
    std::vector<double> d, e;
    impurity_chain(lat, d, e);
    std::vector<double> row(d.size(), 0.0);
    row[0] = 1.0;
    tridiagonal_ql_first_row(d, e, row);
    std::vector<double> weights(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) weights[j] = row[j] * row[j];
    return sorted_system(std::move(d), std::move(weights), lat.n_sites);
}

double reliable_time(int n_sites) noexcept {
    return std::max(0.0, (n_sites - kEchoMargin) / 2.0);
}

int min_lattice_size(double t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("min_lattice_size: t_max must be positive");
    return static_cast<int>(std::ceil(2.0 * t_max + kEchoMargin));
}

int default_lattice_size(double t_max) {
    const int need = std::max(1024, min_lattice_size(t_max));
    int n = 1;
    while (n < need) n *= 2;
    return n;
}

ComplexEnergy survival_amplitude_exact(const EigenSystem& es, double t, bool enforce_horizon) {
    if (!std::isfinite(t)) throw DomainError("survival_amplitude_exact: t must be finite");
    if (enforce_horizon && std::abs(t) > reliable_time(es.n_sites)) {
        throw TimeRangeError("survival_amplitude_exact: t = " + std::to_string(t) + " exceeds the echo horizon of n = " +
                             std::to_string(es.n_sites) + "; use n >= " +
                             std::to_string(min_lattice_size(std::abs(t))));
    }
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < es.energies.size(); ++j) {
        const double phase = es.energies[j] * t;
        re += es.impurity_weights[j] * std::cos(phase);
        im -= es.impurity_weights[j] * std::sin(phase);
    }
    return {re, im};
}

}  // namespace decaylab
