#pragma once

// Discrete spectrum of eta(z) = 0 on both Riemann sheets.
//
// The sheet-resolved dispersion function is squared into a polynomial
// (quartic for Model I, quadratic for Model II, linear for Model II at
// g = 1/2). Its companion-matrix roots are assigned to the sheet whose eta
// they actually zero, Newton-polished there, and classified.

#include "decaylab/model.hpp"
#include "decaylab/polynomial.hpp"
#include "decaylab/zone_scales.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace decaylab {

enum class StateClass {
    Bound,          // sheet I, real, |z| > 1
    AntiBound,      // sheet II, real, |z| >= 1
    Resonance,      // sheet II, Im z < 0
    AntiResonance,  // sheet II, Im z > 0
};

std::string_view to_string(StateClass c) noexcept;

struct SpectralPoint {
    ComplexEnergy z;
    Sheet sheet = Sheet::I;
    StateClass state = StateClass::Bound;
    ComplexEnergy residue;      // 1 / eta'(z) on `sheet`
    double eta_residual = 0.0;  // |eta_sheet(z)| after polishing
};

struct SpectrumResult {
    ModelParams params;
    std::vector<SpectralPoint> points;  // sorted by Re z, then Im z
    std::optional<double> delta_q;      // z_nearest + 1 for the real state nearest the lower edge
    std::optional<double> t_q;          // 1/|delta_q|, +inf when delta_q == 0
    std::optional<double> epsilon_A_hint;

    // Real state with Re z <= -1 closest to the lower edge (or Re z >= 1 closest
    // to the upper edge); nullptr when there is none.
    const SpectralPoint* nearest_real_state(BandEdge edge) const noexcept;
};

// Absolute tolerance below which Im z counts as zero after polishing.
inline constexpr double kRealTolerance = 1e-9;
// Residual bound for an accepted root.
inline constexpr double kResidualTolerance = 1e-10;

/// Coefficients (ascending powers) of the polynomial whose roots are the
/// zeros of eta on either sheet. Throws DegenerateSpectrum for Model II with
/// g = 1/2 and eps_d = 0, where the linear equation has no solution.
RealPolynomial squared_polynomial(const ModelParams& p);

/// Full discrete spectrum; throws SolverError if a root zeroes neither sheet.
SpectrumResult solve_spectrum(const ModelParams& p);

/// Gap, crossover scale and the Model I auxiliary scales.
ZoneScales gap_and_timescale(const ModelParams& p);
ZoneScales gap_and_timescale(const SpectrumResult& spectrum);

/// Parameter eps_A at which the state nearest `edge` switches between Bound
/// and AntiBound, by bisection to 1e-9 inside `bracket` (eps_d values).
/// Model I throws NoAbsorption.
double find_absorption_point(ModelKind kind, double g, BandEdge edge, std::pair<double, double> bracket);

/// Model I exceptional point eps_gamma = |eps_d| at which the two sheet-II real
/// roots coalesce into a resonance pair (sign change of the quartic discriminant).
double find_exceptional_point(double g);

/// Leading-order position of the Model I persistent bound state,
/// -1 - g^4 / (2 (1 + eps_d)^2).
double persistent_bound_expansion(const ModelParams& p);

}  // namespace decaylab
