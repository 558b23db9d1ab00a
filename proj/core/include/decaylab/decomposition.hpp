#pragma once

// Survival amplitude from the deformed inverse-Laplace contour: pole terms for
// the states the deformation crosses plus one vertical integral per band edge.

#include "decaylab/model.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/spectrum.hpp"

#include <map>
#include <optional>
#include <vector>

namespace decaylab {

inline constexpr double kDefaultMinTime = 1.0;

struct PoleTerm {
    SpectralPoint point;
    ComplexEnergy value;
};

struct SurvivalComponents {
    double t = 0.0;
    std::vector<PoleTerm> bound_terms;
    std::vector<PoleTerm> resonance_terms;  // sheet II, Im z < 0, -1 < Re z < 1
    std::map<BandEdge, ComplexEnergy> edge_integrals;
    ComplexEnergy total;

    ComplexEnergy bound_sum() const;
    ComplexEnergy resonance_sum() const;
    ComplexEnergy background() const;
};

enum class EdgeQuadrature {
    Auto,           // Gauss-Laguerre when singularities are far from the ray, else tanh-sinh
    GaussLaguerre,  // always Gauss-Laguerre (node-doubling value and change reported)
    TanhSinh,       // always tanh-sinh in u = sqrt(s)
};

struct EdgeIntegral {
    ComplexEnergy value;
    QuadratureResult quadrature;
};

/// residue * exp(-i z t). Throws DomainError for AntiBound/AntiResonance
/// points and for t < 0.
ComplexEnergy pole_contribution(const SpectralPoint& pt, double t);

/// Evaluates a parameter set repeatedly at different times, sharing the
/// solved spectrum. Immutable after construction and safe to share across
/// threads.
class Decomposition {
public:
    explicit Decomposition(const ModelParams& p, double t_min = kDefaultMinTime);

    const ModelParams& params() const noexcept { return params_; }
    // Empty for the degenerate Model II point (g = 1/2, eps_d = 0).
    const std::vector<SpectralPoint>& points() const noexcept { return points_; }
    double t_min() const noexcept { return t_min_; }

    /// (1/(pi i)) int e^{-izt} Lambda^I / (eta^I eta^II) dz down the vertical ray
    /// from `edge`. Throws TimeRangeError for t < t_min and QuadratureError when
    /// no rule converges.
    EdgeIntegral edge(BandEdge edge, double t, EdgeQuadrature method = EdgeQuadrature::Auto) const;

    SurvivalComponents at(double t) const;

private:
    ModelParams params_;
    double t_min_;
    std::vector<SpectralPoint> points_;
};

ComplexEnergy edge_background(const ModelParams& p, BandEdge edge, double t, double t_min = kDefaultMinTime);

SurvivalComponents survival_amplitude_decomposed(const ModelParams& p, double t, double t_min = kDefaultMinTime);

}  // namespace decaylab
