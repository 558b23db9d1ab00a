#include "decaylab/decomposition.hpp"

#include "decaylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace decaylab {

namespace {

constexpr int kLaguerreNodes = 200;
constexpr double kLaguerreAccept = 1e-10;
constexpr double kTanhSinhTol = 1e-12;
constexpr double kRayCutoff = 7.0;  // u = sqrt(s) upper limit, e^{-49} tail
constexpr double kMinSingularDistance = 1.0;

const ComplexEnergy kI{0.0, 1.0};

// eta^I(z) eta^II(z) with the branch factor removed: the integrand
// Lambda^I / (eta^I eta^II) equals prefactor * sqrt_band(z) / denominator(z).
ComplexEnergy denominator(const ModelParams& p, ComplexEnergy z) {
    const double g2 = p.g * p.g;
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        const ComplexEnergy d = z - p.epsilon_d;
        return d * d * (z * z - 1.0) - g2 * g2;
    }
    const ComplexEnergy a = (1.0 - 2.0 * g2) * z - p.epsilon_d;
    return a * a - 4.0 * g2 * g2 * (z * z - 1.0);
}

double prefactor(const ModelParams& p) {
    const double g2 = p.g * p.g;
    return p.kind == ModelKind::InfiniteSideCoupled ? g2 : -2.0 * g2;
}

// Distance from the point s to the ray [0, inf).
double ray_distance(ComplexEnergy s) {
    return s.real() >= 0.0 ? std::abs(s.imag()) : std::abs(s);
}

}  // namespace

ComplexEnergy SurvivalComponents::bound_sum() const {
    ComplexEnergy sum{};
    for (const auto& term : bound_terms) sum += term.value;
    return sum;
}

ComplexEnergy SurvivalComponents::resonance_sum() const {
    ComplexEnergy sum{};
    for (const auto& term : resonance_terms) sum += term.value;
    return sum;
}

ComplexEnergy SurvivalComponents::background() const {
    ComplexEnergy sum{};
    for (const auto& [edge, value] : edge_integrals) sum += value;
    return sum;
}

ComplexEnergy pole_contribution(const SpectralPoint& pt, double t) {
    if (!(t >= 0.0)) throw DomainError("pole_contribution: t must be >= 0");
    if (pt.state != StateClass::Bound && pt.state != StateClass::Resonance) {
        throw DomainError(std::string("pole_contribution: ") + std::string(to_string(pt.state)) +
                          " poles are not crossed by the contour for t > 0");
    }
    return pt.residue * std::exp(-kI * pt.z * t);
}

Decomposition::Decomposition(const ModelParams& p, double t_min) : params_(p), t_min_(t_min) {
    validate(p);
    if (!(t_min > 0.0)) throw DomainError("Decomposition: t_min must be positive");
    try {
        points_ = solve_spectrum(p).points;
    } catch (const DegenerateSpectrum&) {
        // No discrete state at all; the amplitude is pure background.
        points_.clear();
    }
}

EdgeIntegral Decomposition::edge(BandEdge which, double t, EdgeQuadrature method) const {
    if (!(t >= t_min_)) {
        throw TimeRangeError("edge_background: t = " + std::to_string(t) + " is below t_min = " +
                             std::to_string(t_min_) + "; use the lattice oracle for short times");
    }
    EdgeIntegral out;
    out.quadrature.method =
        method == EdgeQuadrature::TanhSinh ? QuadratureMethod::TanhSinh : QuadratureMethod::GaussLaguerre;
    if (params_.g == 0.0) return out;

    const double e = edge_energy(which);
    const double c = prefactor(params_);
    const ModelParams& p = params_;

    bool use_laguerre = method == EdgeQuadrature::GaussLaguerre;
    if (method == EdgeQuadrature::Auto) {
        // Singularities of the s-integrand: poles s_j = i t (z_j - e) and the
        // opposite band edge at s = -2 i e t.
        double nearest = std::abs(2.0 * e * t);
        for (const auto& pt : points_) nearest = std::min(nearest, ray_distance(kI * t * (pt.z - e)));
        use_laguerre = t > 2.0 && nearest >= kMinSingularDistance;
    }

    ComplexEnergy integral;
    if (use_laguerre) {
        // sqrt_band(z) = sqrt(s) e^{-i pi/4} t^{-1/2} sqrt(z + e) on the ray.
        const ComplexEnergy edge_factor = std::polar(1.0 / std::sqrt(t), -std::numbers::pi / 4.0);
        auto smooth = [&](double s) -> ComplexEnergy {
            const ComplexEnergy z{e, -s / t};
            return c * edge_factor * std::sqrt(z + e) / denominator(p, z);
        };
        out.quadrature = gauss_laguerre(smooth, 0.5, kLaguerreNodes);
        integral = out.quadrature.value;
        if (method == EdgeQuadrature::Auto && !(out.quadrature.refinement_change <= kLaguerreAccept * std::max(1.0, std::abs(integral)))) {
            use_laguerre = false;
        }
    }
    if (!use_laguerre) {
        auto in_u = [&](double u) -> ComplexEnergy {
            const double s = u * u;
            if (s < 1e-200) return {};  // below rounding; avoids 0/0 at an edge pole
            const ComplexEnergy z{e, -s / t};
            return 2.0 * u * std::exp(-s) * c * sqrt_band(z) / denominator(p, z);
        };
        out.quadrature = tanh_sinh(in_u, 0.0, kRayCutoff, kTanhSinhTol, 12);
        integral = out.quadrature.value;
    }

    // z = e - i s / t, dz = -i ds / t; the 1/(pi i) normalization and
    // e^{-i e t} phase combine to e/(pi t) for the orientation of each edge.
    out.value = (e / (std::numbers::pi * t)) * std::exp(-kI * e * t) * integral;
    return out;
}

SurvivalComponents Decomposition::at(double t) const {
    SurvivalComponents out;
    out.t = t;
    out.edge_integrals[BandEdge::Lower] = edge(BandEdge::Lower, t).value;
    out.edge_integrals[BandEdge::Upper] = edge(BandEdge::Upper, t).value;
    for (const auto& pt : points_) {
        if (pt.state == StateClass::Bound) {
            out.bound_terms.push_back({pt, pole_contribution(pt, t)});
        } else if (pt.state == StateClass::Resonance && std::abs(pt.z.real()) < 1.0) {
            out.resonance_terms.push_back({pt, pole_contribution(pt, t)});
        }
    }
    out.total = out.bound_sum() + out.resonance_sum() + out.background();
    return out;
}

ComplexEnergy edge_background(const ModelParams& p, BandEdge edge, double t, double t_min) {
    return Decomposition(p, t_min).edge(edge, t).value;
}

SurvivalComponents survival_amplitude_decomposed(const ModelParams& p, double t, double t_min) {
    return Decomposition(p, t_min).at(t);
}

}  // namespace decaylab
