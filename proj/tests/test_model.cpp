#include "decaylab/errors.hpp"
#include "decaylab/model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace decaylab;

namespace {

const ModelParams kModelI = ModelParams::make(ModelKind::InfiniteSideCoupled, -0.3, 0.4);
const ModelParams kModelII = ModelParams::make(ModelKind::SemiInfiniteEndpoint, -0.4, 0.5);

}  // namespace

TEST(Model, ParamsValidation) {
    EXPECT_THROW(ModelParams::make(ModelKind::InfiniteSideCoupled, 0.0, -0.1), DomainError);
    EXPECT_THROW(ModelParams::make(ModelKind::InfiniteSideCoupled, std::nan(""), 0.1), DomainError);
    EXPECT_NO_THROW(ModelParams::make(ModelKind::SemiInfiniteEndpoint, 3.0, 0.0));
}

TEST(Model, ParseKind) {
    EXPECT_EQ(parse_model_kind("I"), ModelKind::InfiniteSideCoupled);
    EXPECT_EQ(parse_model_kind("2"), ModelKind::SemiInfiniteEndpoint);
    EXPECT_THROW(parse_model_kind("III"), DomainError);
}

TEST(Model, DispersionAndDensity) {
    EXPECT_DOUBLE_EQ(dispersion(0.0), -1.0);
    EXPECT_NEAR(dispersion(std::numbers::pi), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(dos(0.0), 1.0 / std::numbers::pi);
    EXPECT_THROW(dos(1.0), DomainError);
    EXPECT_THROW(dos(-1.5), DomainError);
    // Density of states integrates to one.
    const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double u) { return dos(std::sin(u)) * std::cos(u); }, -std::numbers::pi / 2, std::numbers::pi / 2);
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Model, SqrtBandBranch) {
    // ~ z at infinity, cut on [-1, 1] only.
    EXPECT_NEAR(std::abs(sqrt_band({1e6, 0.0}) - ComplexEnergy{1e6, 0.0}), 0.0, 1e-5);
    EXPECT_NEAR(std::abs(sqrt_band({-1e6, 0.0}) - ComplexEnergy{-1e6, 0.0}), 0.0, 1e-5);
    EXPECT_LT(sqrt_band({-2.0, 0.0}).real(), 0.0);
    EXPECT_GT(sqrt_band({2.0, 0.0}).real(), 0.0);
    // Continuous across the real axis outside the band, discontinuous inside.
    for (double x : {-3.0, -1.5, 1.2, 4.0}) {
        EXPECT_LT(std::abs(sqrt_band({x, 1e-12}) - sqrt_band({x, -1e-12})), 1e-9) << x;
    }
    for (double x : {-0.9, 0.0, 0.5}) {
        const ComplexEnergy above = sqrt_band({x, 1e-14});
        EXPECT_NEAR(std::abs(above + sqrt_band({x, -1e-14})), 0.0, 1e-9) << x;
        EXPECT_NEAR(std::abs(sqrt_band({x, 0.0}) - above), 0.0, 1e-9) << x;
    }
    EXPECT_THROW(sqrt_band({std::nan(""), 0.0}), DomainError);
}

TEST(Model, SelfEnergyMatchesKIntegral) {
    const ComplexEnergy points[] = {{0.3, 0.2}, {-0.7, -0.05}, {-1.4, 0.0}, {1.1, 0.3}, {0.0, -2.0}, {2.5, 0.0}};
    for (const ModelParams& p : {kModelI, kModelII}) {
        for (ComplexEnergy z : points) {
            const ComplexEnergy ref = oracle::self_energy_k_integral(p, z);
            EXPECT_LT(std::abs(self_energy(p, z, Sheet::I) - ref), 1e-8) << to_string(p.kind) << " z=" << z;
        }
    }
}

TEST(Model, ModelTwoClosedForm) {
    // Sigma^I = 2 g^2 (z - sqrt_band(z)).
    const ComplexEnergy z{0.2, 0.4};
    const ComplexEnergy expected = 2.0 * 0.25 * (z - sqrt_band(z));
    EXPECT_LT(std::abs(self_energy(kModelII, z, Sheet::I) - expected), 1e-15);
    EXPECT_EQ(delta_part(kModelI, z), ComplexEnergy{});
}

TEST(Model, EtaDerivativeMatchesFiniteDifference) {
    const ComplexEnergy points[] = {{-1.3, 0.0}, {0.2, -0.3}, {0.7, 0.4}, {1.6, -0.1}};
    for (const ModelParams& p : {kModelI, kModelII}) {
        for (Sheet s : {Sheet::I, Sheet::II}) {
            for (ComplexEnergy z : points) {
                const double h = 1e-6;
                const ComplexEnergy fd = (eta(p, z + h, s) - eta(p, z - h, s)) / (2.0 * h);
                EXPECT_LT(std::abs(eta_derivative(p, z, s) - fd), 1e-7) << z;
            }
        }
    }
}

TEST(Model, GreenFunctionIsInverseEta) {
    const ComplexEnergy z{0.1, 0.5};
    EXPECT_LT(std::abs(green_dd(kModelI, z, Sheet::I) * eta(kModelI, z, Sheet::I) - 1.0), 1e-15);
}

TEST(Model, CouplingProfiles) {
    EXPECT_DOUBLE_EQ(coupling(ModelKind::InfiniteSideCoupled, 1.3), -1.0 / std::sqrt(2.0 * std::numbers::pi));
    EXPECT_NEAR(coupling(ModelKind::SemiInfiniteEndpoint, std::numbers::pi / 2), -1.0 / std::sqrt(std::numbers::pi),
                1e-15);
}
