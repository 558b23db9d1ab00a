#include "decaylab/asymptotics.hpp"

#include "decaylab/errors.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace decaylab {

namespace {

const ComplexEnergy kI{0.0, 1.0};
const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

void require_time(double t, const char* where) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(where) + ": t must be positive and finite");
}

void require_model_two_half(const ModelParams& p, const char* where) {
    if (p.g != 0.5) {
        throw DomainError(std::string(where) + ": the Model II closed form holds at g = 1/2 only");
    }
}

}  // namespace

std::string_view to_string(Zone z) noexcept {
    switch (z) {
        case Zone::NearZone: return "near";
        case Zone::FarZone: return "far";
        case Zone::Crossover: return "crossover";
        case Zone::PreAsymptotic: return "pre-asymptotic";
    }
    return "?";
}

ComplexEnergy f_bar(double tau, double t) {
    if (!(tau >= 1.0)) throw DomainError("f_bar: tau must be >= 1");
    require_time(t, "f_bar");
    // s = r / tau: F = tau^{-3/2} int r^{1/2} e^{-r} sqrt(r / tau - 2 i t) dr.
    const double scale = std::pow(tau, -1.5);
    if (2.0 * t * tau >= 1.0) {
        auto smooth = [&](double r) { return std::sqrt(ComplexEnergy{r / tau, -2.0 * t}); };
        const QuadratureResult gl = gauss_laguerre(smooth, 0.5, 200);
        if (gl.refinement_change <= 1e-11 * std::max(1.0, std::abs(gl.value))) return scale * gl.value;
    }
    auto in_u = [&](double u) {
        const double r = u * u;
        return 2.0 * r * std::exp(-r) * std::sqrt(ComplexEnergy{r / tau, -2.0 * t});
    };
    return scale * tanh_sinh(in_u, 0.0, 7.0, 1e-13, 12).value;
}

ComplexEnergy near_zone_amplitude(const ModelParams& p, double t) {
    validate(p);
    require_time(t, "near_zone_amplitude");
    const ComplexEnergy phase = std::exp(kI * t);
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        const double shifted = 1.0 + p.epsilon_d;
        if (shifted == 0.0) throw SingularParameter("near_zone_amplitude: Model I is singular at eps_d = -1");
        return std::exp(kI * (0.75 * std::numbers::pi)) * p.g * p.g * phase /
               (kSqrt2Pi * shifted * shifted * std::sqrt(t));
    }
    require_model_two_half(p, "near_zone_amplitude");
    if (p.epsilon_d == 0.0) throw SingularParameter("near_zone_amplitude: Model II is singular at eps_d = 0");
    return -std::exp(kI * (0.75 * std::numbers::pi)) * phase / (kSqrt2Pi * p.epsilon_d * std::sqrt(t));
}

ComplexEnergy far_zone_amplitude(const ModelParams& p, double t) {
    validate(p);
    require_time(t, "far_zone_amplitude");
    const ComplexEnergy phase = std::exp(kI * t);
    const double t32 = t * std::sqrt(t);
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        if (p.g == 0.0) throw SingularParameter("far_zone_amplitude: Model I is singular at g = 0");
        return std::exp(kI * (0.25 * std::numbers::pi)) * phase / (kSqrt2Pi * p.g * p.g * t32);
    }
    require_model_two_half(p, "far_zone_amplitude");
    if (p.epsilon_d == 0.0) throw SingularParameter("far_zone_amplitude: Model II is singular at eps_d = 0");
    const SpectrumResult spectrum = solve_spectrum(p);
    if (!spectrum.delta_q || *spectrum.delta_q == 0.0) {
        throw FarZoneAbsent("far_zone_amplitude: the gap to the lower edge is closed, t_q diverges");
    }
    return -std::exp(kI * (0.25 * std::numbers::pi)) * phase /
           (2.0 * kSqrt2Pi * p.epsilon_d * *spectrum.delta_q * t32);
}

Zone classify_zone(const ZoneScales& scales, double t) {
    const double start = 3.0 * scales.t_2;
    if (t <= start) return Zone::PreAsymptotic;
    if (!scales.t_q) return Zone::FarZone;
    const double tq = *scales.t_q;
    if (t > 3.0 * tq) return Zone::FarZone;
    if (t < tq / 3.0) return Zone::NearZone;
    return Zone::Crossover;
}

std::optional<double> predicted_crossover(const ZoneScales& scales) {
    if (scales.t_q_closed_form) return scales.t_q_closed_form;
    return scales.t_q;
}

}  // namespace decaylab
