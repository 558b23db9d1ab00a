#pragma once

// Model definitions for the two tight-binding impurity chains.
//
// Energies are in units of the chain hopping (t = 1) with the chain on-site
// energy fixed at 0, so the continuum occupies [-1, 1]. The self-energy is
// written as Sigma = Delta + Lambda where Delta is entire and Lambda carries
// the branch cut on [-1, 1]. Sheet I is the physical sheet; sheet II is its
// continuation through the cut, on which Lambda changes sign.

#include <complex>
#include <string_view>

namespace decaylab {

using Complex = std::complex<double>;
using ComplexEnergy = std::complex<double>;

enum class ModelKind {
    InfiniteSideCoupled,   // Model I: infinite chain, impurity side-coupled to one site
    SemiInfiniteEndpoint,  // Model II: semi-infinite chain, impurity at the end
};

enum class Sheet { I, II };

struct BandEdges {
    static constexpr double lower = -1.0;
    static constexpr double upper = 1.0;
};

enum class BandEdge { Lower, Upper };

constexpr double edge_energy(BandEdge e) noexcept {
    return e == BandEdge::Lower ? BandEdges::lower : BandEdges::upper;
}

struct ModelParams {
    ModelKind kind = ModelKind::SemiInfiniteEndpoint;
    double epsilon_d = 0.0;
    double g = 0.5;

    // Validating constructor; throws DomainError for g < 0 or non-finite values.
    static ModelParams make(ModelKind kind, double epsilon_d, double g);

    bool operator==(const ModelParams&) const = default;
};

void validate(const ModelParams& p);

std::string_view to_string(ModelKind k) noexcept;
std::string_view to_string(Sheet s) noexcept;
std::string_view to_string(BandEdge e) noexcept;

// "I"/"II" (also accepts "1"/"2"); throws DomainError otherwise.
ModelKind parse_model_kind(std::string_view text);

/// Band dispersion eps_k = -cos k.
double dispersion(double k) noexcept;

/// Normalized density of states (1/pi)(1 - eps^2)^(-1/2); DomainError for |eps| >= 1.
double dos(double eps);

/// Coupling profile v_k: constant -1/sqrt(2 pi) (Model I), -sin(k)/sqrt(pi) (Model II).
double coupling(ModelKind kind, double k) noexcept;

/// Branch of sqrt(z^2 - 1) with its cut on [-1, 1] and sqrt_band(z) ~ z at
/// infinity. Points on the cut take the limit from the upper half plane.
ComplexEnergy sqrt_band(ComplexEnergy z);

ComplexEnergy delta_part(const ModelParams& p, ComplexEnergy z);
ComplexEnergy lambda_part(const ModelParams& p, ComplexEnergy z, Sheet s);
ComplexEnergy self_energy(const ModelParams& p, ComplexEnergy z, Sheet s);

/// Dispersion function eta(z) = z - eps_d - Sigma(z) on the given sheet.
ComplexEnergy eta(const ModelParams& p, ComplexEnergy z, Sheet s);

/// d eta / dz on the given sheet. Diverges at the band edges.
ComplexEnergy eta_derivative(const ModelParams& p, ComplexEnergy z, Sheet s);

/// Impurity Green's function 1/eta.
ComplexEnergy green_dd(const ModelParams& p, ComplexEnergy z, Sheet s);

}  // namespace decaylab
