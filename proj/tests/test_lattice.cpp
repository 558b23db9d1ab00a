#include "decaylab/chebyshev.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/lattice.hpp"
#include "decaylab/spectrum.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace decaylab;

namespace {

ModelParams model_one(double eps, double g) { return ModelParams::make(ModelKind::InfiniteSideCoupled, eps, g); }
ModelParams model_two(double eps, double g = 0.5) { return ModelParams::make(ModelKind::SemiInfiniteEndpoint, eps, g); }

double weight_sum(const EigenSystem& es) {
    return std::accumulate(es.impurity_weights.begin(), es.impurity_weights.end(), 0.0);
}

}  // namespace

TEST(Hamiltonian, SmallOpenChain) {
    const FiniteLattice lat{model_two(0.3), 2, Boundary::Open};
    Eigen::MatrixXd expected(3, 3);
    expected << 0.3, -0.5, 0, -0.5, 0, -0.5, 0, -0.5, 0;
    EXPECT_EQ(build_hamiltonian(lat), expected);
    EXPECT_EQ(Eigen::MatrixXd(build_hamiltonian_sparse(lat)), expected);
}

TEST(Hamiltonian, DecoupledImpurityRing) {
    const FiniteLattice lat{model_one(0.7, 0.0), 4, Boundary::Periodic};
    const Eigen::MatrixXd h = build_hamiltonian(lat);
    EXPECT_EQ(h(0, 0), 0.7);
    EXPECT_TRUE(h.row(0).tail(4).isZero());
    EXPECT_TRUE(h.col(0).tail(4).isZero());
    EXPECT_EQ(h(1, 4), -0.5);
    EXPECT_EQ(h(4, 1), -0.5);
}

TEST(Hamiltonian, RingCouplesMiddleSite) {
    const FiniteLattice lat = FiniteLattice::make(model_one(0.0, 0.3), 64);
    EXPECT_EQ(lat.boundary, Boundary::Periodic);
    EXPECT_EQ(lat.coupled_site(), 32);
    const Eigen::MatrixXd h = build_hamiltonian(lat);
    EXPECT_EQ(h(0, 32), -0.3);
    EXPECT_TRUE(h.isApprox(h.transpose()));
    EXPECT_EQ(FiniteLattice::make(model_two(0.0), 64).coupled_site(), 1);
}

TEST(Hamiltonian, SizeValidation) {
    EXPECT_THROW(FiniteLattice::make(model_two(0.0), 63), DomainError);
    EXPECT_THROW(FiniteLattice::make(model_one(0.0, 0.2), 65), DomainError);
}

TEST(Diagonalize, Completeness) {
    for (const ModelParams& p : {model_one(0.0, 0.2), model_one(-0.5, 0.4), model_two(-0.4), model_two(-1.0)}) {
        const FiniteLattice lat = FiniteLattice::make(p, 512);
        for (EigenBackend b : {EigenBackend::Tridiagonal, EigenBackend::Dense}) {
            const EigenSystem es = diagonalize(lat, b);
            EXPECT_NEAR(weight_sum(es), 1.0, 1e-10);
            EXPECT_TRUE(std::is_sorted(es.energies.begin(), es.energies.end()));
            EXPECT_GE(es.energies.front(), -1.0 - 2.0);
            EXPECT_LE(es.energies.back(), 1.0 + 2.0);
        }
    }
}

TEST(Diagonalize, ParitySymmetricSpectrum) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_one(0.0, 0.3), 256), EigenBackend::Dense);
    const std::size_t n = es.energies.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(es.energies[i], -es.energies[n - 1 - i], 1e-12);
}

TEST(Diagonalize, AntiBoundLeavesNoBoundEigenvalue) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_two(-0.4), 4096));
    EXPECT_GE(es.energies.front(), -1.0 - 1e-3);
}

TEST(Diagonalize, BoundStateConverges) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_two(-1.0), 4096));
    EXPECT_NEAR(es.energies.front(), -1.25, 1e-4);
    const ModelParams p = model_one(-0.5, 0.4);
    const double z = solve_spectrum(p).nearest_real_state(BandEdge::Lower)->z.real();
    const EigenSystem ring = diagonalize(FiniteLattice::make(p, 1024));
    EXPECT_NEAR(ring.energies.front(), z, 1e-6);
}

TEST(Diagonalize, BackendsAgree) {
    for (const ModelParams& p : {model_one(-0.3, 0.25), model_two(0.6)}) {
        const FiniteLattice lat = FiniteLattice::make(p, 1024);
        const EigenSystem tri = diagonalize(lat, EigenBackend::Tridiagonal);
        const EigenSystem dense = diagonalize(lat, EigenBackend::Dense);
        for (double t : {0.0, 1.0, 17.3, 100.0, 250.0}) {
            EXPECT_LT(std::abs(survival_amplitude_exact(tri, t) - survival_amplitude_exact(dense, t)), 1e-10) << t;
        }
    }
}

TEST(Diagonalize, DenseSizeLimit) {
    const FiniteLattice lat{model_two(0.0), 10000, Boundary::Open};
    EXPECT_THROW(diagonalize(lat, EigenBackend::Dense), DomainError);
}

TEST(SurvivalExact, NormalizationAndSymmetry) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_one(-0.5, 0.2), 2048));
    EXPECT_NEAR(std::norm(survival_amplitude_exact(es, 0.0)), 1.0, 1e-12);
    for (double t = 0.5; t < 700.0; t *= 1.7) {
        const ComplexEnergy a = survival_amplitude_exact(es, t);
        EXPECT_NEAR(std::abs(survival_amplitude_exact(es, -t)), std::abs(a), 1e-14);
        EXPECT_LE(std::norm(a), 1.0 + 1e-12);
    }
}

TEST(SurvivalExact, FiniteSizeIndependence) {
    for (const ModelParams& p : {model_one(0.0, 0.4), model_two(-0.4)}) {
        const EigenSystem small = diagonalize(FiniteLattice::make(p, 2048));
        const EigenSystem large = diagonalize(FiniteLattice::make(p, 4096));
        for (double t = 1.0; t <= reliable_time(2048); t *= 1.3) {
            EXPECT_LT(std::abs(survival_amplitude_exact(small, t) - survival_amplitude_exact(large, t)), 1e-8) << t;
        }
    }
}

TEST(SurvivalExact, BoundStateWeightPersists) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_two(-1.0), 4096));
    double sum = 0.0;
    int count = 0;
    for (double t = 1000.0; t <= 1500.0; t += 0.37, ++count) sum += std::norm(survival_amplitude_exact(es, t));
    EXPECT_NEAR(sum / count, 0.5625, 2e-3);
}

TEST(SurvivalExact, HorizonNamesRequiredSize) {
    const EigenSystem es = diagonalize(FiniteLattice::make(model_two(-0.4), 1024));
    EXPECT_NO_THROW(survival_amplitude_exact(es, reliable_time(1024)));
    try {
        survival_amplitude_exact(es, 400.0);
        FAIL() << "expected TimeRangeError";
    } catch (const TimeRangeError& e) {
        EXPECT_NE(std::string(e.what()).find("1312"), std::string::npos) << e.what();
    }
    EXPECT_NO_THROW(survival_amplitude_exact(es, 400.0, false));
}

TEST(LatticeSize, Formula) {
    EXPECT_EQ(min_lattice_size(10.0), 532);
    EXPECT_EQ(default_lattice_size(10.0), 1024);
    EXPECT_EQ(min_lattice_size(400.0), 1312);
    EXPECT_EQ(default_lattice_size(400.0), 2048);
    EXPECT_EQ(default_lattice_size(1000.0), 4096);
    EXPECT_GE(reliable_time(min_lattice_size(1000.0)), 1000.0);
}

TEST(Bessel, MatchesStandardLibrary) {
    for (double x : {0.0, 0.3, 5.0, 47.5, 300.0}) {
        const int k_max = static_cast<int>(x) + 40;
        const std::vector<double> j = bessel_j_sequence(k_max, x);
        ASSERT_EQ(j.size(), static_cast<std::size_t>(k_max + 1));
        for (int k = 0; k <= k_max; k += 3) {
            EXPECT_NEAR(j[k], std::cyl_bessel_j(static_cast<double>(k), x), 1e-12) << x << " " << k;
        }
    }
    EXPECT_THROW(bessel_j_sequence(5, -1.0), DomainError);
}

TEST(Chebyshev, MatchesDenseDiagonalization) {
    for (const ModelParams& p : {model_one(-0.5, 0.4), model_two(-1.0), model_two(-0.4)}) {
        const FiniteLattice lat = FiniteLattice::make(p, 1024);
        const EigenSystem es = diagonalize(lat, EigenBackend::Dense);
        const ChebyshevPropagator prop(lat, 250.0);
        for (double t : {0.0, 0.7, 12.0, 99.9, 250.0}) {
            EXPECT_LT(std::abs(prop.amplitude(t) - survival_amplitude_exact(es, t)), 1e-8) << t;
            EXPECT_LT(std::abs(prop.amplitude(-t) - survival_amplitude_exact(es, -t)), 1e-8) << t;
        }
    }
}

TEST(Chebyshev, Limits) {
    const FiniteLattice lat = FiniteLattice::make(model_two(-0.4), 1024);
    const ChebyshevPropagator prop(lat, 100.0);
    EXPECT_THROW(prop.amplitude(101.0), DomainError);
    const ChebyshevPropagator far(lat, 400.0);
    EXPECT_THROW(far.amplitude(400.0), TimeRangeError);
}
