#pragma once

// Reference computations that share no code path with the library routes
// they check.

#include "decaylab/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

namespace oracle {

using decaylab::ComplexEnergy;

template <class F>
ComplexEnergy integrate_complex(F f, double a, double b, double tol = 1e-13) {
    using boost::math::quadrature::gauss_kronrod;
    const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 25, tol);
    const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 25, tol);
    return {re, im};
}

// Sigma(z) = g^2 int_{-pi}^{pi} |v_k|^2 / (z - eps_k) dk on the physical sheet
// (Im z != 0 or |Re z| > 1).
inline ComplexEnergy self_energy_k_integral(const decaylab::ModelParams& p, ComplexEnergy z) {
    auto integrand = [&](double k) {
        const double v = p.kind == decaylab::ModelKind::InfiniteSideCoupled ? 1.0 / std::sqrt(2.0 * std::numbers::pi)
                                                                              : std::sin(k) / std::sqrt(std::numbers::pi);
        return p.g * p.g * v * v / (z + std::cos(k));
    };
    return integrate_complex(integrand, -std::numbers::pi, std::numbers::pi);
}

// Edge background straight from its definition along z = e - i y:
// (e / pi) e^{-i e t} int_0^inf e^{-y t} Lambda^I / (eta^I eta^II) dy, with
// the sheet functions evaluated through the model API.
inline ComplexEnergy edge_background_direct(const decaylab::ModelParams& p, double e, double t) {
    using decaylab::Sheet;
    auto integrand = [&](double y) -> ComplexEnergy {
        if (y == 0.0) return {};
        const ComplexEnergy z{e, -y};
        const ComplexEnergy num = decaylab::lambda_part(p, z, Sheet::I);
        const ComplexEnergy den = decaylab::eta(p, z, Sheet::I) * decaylab::eta(p, z, Sheet::II);
        return std::exp(-y * t) * num / den;
    };
    // Split at a few decay lengths so the adaptive rule sees the sqrt cusp.
    const double cut = 1.0 / t;
    ComplexEnergy total = integrate_complex([&](double u) { return 2.0 * u * integrand(u * u); }, 0.0, std::sqrt(cut));
    total += integrate_complex(integrand, cut, std::numeric_limits<double>::infinity());
    const ComplexEnergy phase = std::exp(ComplexEnergy{0.0, -e * t});
    return (e / std::numbers::pi) * phase * total;
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
};

}  // namespace oracle
