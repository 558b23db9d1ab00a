#include "decaylab/model.hpp"

#include "decaylab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace decaylab {

namespace {

void require_finite(ComplexEnergy z, const char* where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(where) + ": non-finite complex energy");
    }
}

constexpr double sheet_sign(Sheet s) noexcept { return s == Sheet::I ? 1.0 : -1.0; }

}  // namespace

ModelParams ModelParams::make(ModelKind kind, double epsilon_d, double g) {
    ModelParams p{kind, epsilon_d, g};
    validate(p);
    return p;
}

void validate(const ModelParams& p) {
    if (!std::isfinite(p.epsilon_d)) {
        throw DomainError("ModelParams: epsilon_d must be finite");
    }
    if (!std::isfinite(p.g) || p.g < 0.0) {
        throw DomainError("ModelParams: coupling g must be finite and >= 0");
    }
}

std::string_view to_string(ModelKind k) noexcept {
    return k == ModelKind::InfiniteSideCoupled ? "I" : "II";
}

std::string_view to_string(Sheet s) noexcept { return s == Sheet::I ? "I" : "II"; }

std::string_view to_string(BandEdge e) noexcept { return e == BandEdge::Lower ? "lower" : "upper"; }

ModelKind parse_model_kind(std::string_view text) {
    if (text == "I" || text == "1") return ModelKind::InfiniteSideCoupled;
    if (text == "II" || text == "2") return ModelKind::SemiInfiniteEndpoint;
    throw DomainError("unknown model '" + std::string(text) + "' (expected I or II)");
}

double dispersion(double k) noexcept { return -std::cos(k); }

double dos(double eps) {
    if (!(std::abs(eps) < 1.0)) {
        throw DomainError("dos: energy must lie strictly inside the band (-1, 1)");
    }
    return std::numbers::inv_pi / std::sqrt(1.0 - eps * eps);
}

double coupling(ModelKind kind, double k) noexcept {
    if (kind == ModelKind::InfiniteSideCoupled) {
        return -1.0 / std::sqrt(2.0 * std::numbers::pi);
    }
    return -std::sin(k) * std::numbers::inv_sqrtpi;
}

ComplexEnergy sqrt_band(ComplexEnergy z) {
    require_finite(z, "sqrt_band");
    if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0) {
        const double x = z.real();
        return {0.0, std::sqrt((1.0 - x) * (1.0 + x))};
    }
    // Product of principal roots: the two cuts cancel on (-inf, -1), leaving [-1, 1].
    return std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
}

ComplexEnergy delta_part(const ModelParams& p, ComplexEnergy z) {
    if (p.kind == ModelKind::InfiniteSideCoupled) return {0.0, 0.0};
    return 2.0 * p.g * p.g * z;
}

ComplexEnergy lambda_part(const ModelParams& p, ComplexEnergy z, Sheet s) {
    const double g2 = p.g * p.g;
    const ComplexEnergy root = sqrt_band(z);
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        return sheet_sign(s) * g2 / root;
    }
    return -sheet_sign(s) * 2.0 * g2 * root;
}

ComplexEnergy self_energy(const ModelParams& p, ComplexEnergy z, Sheet s) {
    return delta_part(p, z) + lambda_part(p, z, s);
}

ComplexEnergy eta(const ModelParams& p, ComplexEnergy z, Sheet s) {
    return z - p.epsilon_d - self_energy(p, z, s);
}

ComplexEnergy eta_derivative(const ModelParams& p, ComplexEnergy z, Sheet s) {
    const double g2 = p.g * p.g;
    const ComplexEnergy root = sheet_sign(s) * sqrt_band(z);
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        return 1.0 + g2 * z / (root * root * root);
    }
    return 1.0 - 2.0 * g2 * (1.0 - z / root);
}

ComplexEnergy green_dd(const ModelParams& p, ComplexEnergy z, Sheet s) {
    return 1.0 / eta(p, z, s);
}

}  // namespace decaylab
