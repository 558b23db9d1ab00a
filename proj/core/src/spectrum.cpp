#include "decaylab/spectrum.hpp"

#include "decaylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace decaylab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_model_two_linear(const ModelParams& p) noexcept {
    return p.kind == ModelKind::SemiInfiniteEndpoint && 1.0 - 4.0 * p.g * p.g == 0.0;
}

// Root accepted when the residual is small outright, or when the Newton
// correction is at rounding level (steep eta next to a band edge).
bool converged(const ModelParams& p, ComplexEnergy z, Sheet s, double* residual) {
    const ComplexEnergy value = eta(p, z, s);
    *residual = std::abs(value);
    if (*residual <= kResidualTolerance) return true;
    const ComplexEnergy slope = eta_derivative(p, z, s);
    return std::abs(value / slope) <= 1e-12 * std::max(1.0, std::abs(z));
}

ComplexEnergy newton_polish(const ModelParams& p, ComplexEnergy z, Sheet s, bool keep_real) {
    ComplexEnergy best = z;
    double best_res = std::abs(eta(p, z, s));
    for (int iter = 0; iter < 60 && best_res > 0.0; ++iter) {
        const ComplexEnergy slope = eta_derivative(p, best, s);
        if (!std::isfinite(std::abs(slope)) || slope == ComplexEnergy{}) break;
        ComplexEnergy next = best - eta(p, best, s) / slope;
        if (keep_real) {
            next = {next.real(), 0.0};
            // A real root lives outside the band; never step across an edge.
            if (std::abs(next.real()) <= 1.0 || (next.real() > 0.0) != (best.real() > 0.0)) break;
        }
        const double res = std::abs(eta(p, next, s));
        if (!(res < best_res)) break;
        const double step = std::abs(next - best);
        best = next;
        best_res = res;
        if (step <= 4.0 * kEps * std::max(1.0, std::abs(best))) break;
    }
    return best;
}

// For a real root x outside the band the squared equation reads
// A(x)^2 = Lambda(x)^2 with A = x - eps_d - Delta(x); the root belongs to
// sheet I exactly when A and Lambda^I(x) share their sign. The sign of
// Lambda^I below (above) the band follows from sqrt_band < 0 (> 0) there, so
// only A is evaluated and the test stays sharp as the root nears the edge.
// Returns nullopt when A vanishes (a state sitting on the threshold).
std::optional<Sheet> real_root_sheet(const ModelParams& p, double x) {
    const double a = x - p.epsilon_d - delta_part(p, x).real();
    if (a == 0.0) return std::nullopt;
    const bool band_root_positive = x > 0.0;
    const bool lambda_positive =
        p.kind == ModelKind::InfiniteSideCoupled ? band_root_positive : !band_root_positive;
    return (a > 0.0) == lambda_positive ? Sheet::I : Sheet::II;
}

StateClass classify(Sheet s, ComplexEnergy z) {
    if (s == Sheet::I) return StateClass::Bound;
    if (z.imag() == 0.0) {
        return std::abs(z.real()) >= 1.0 ? StateClass::AntiBound : StateClass::AntiResonance;
    }
    return z.imag() < 0.0 ? StateClass::Resonance : StateClass::AntiResonance;
}

SpectralPoint edge_point(const ModelParams& p, double x, Sheet sheet) {
    // Discrete state on the threshold: eta' diverges there, so its pole
    // weight vanishes.
    SpectralPoint pt;
    pt.z = {x < 0.0 ? -1.0 : 1.0, 0.0};
    pt.sheet = sheet;
    pt.state = sheet == Sheet::I ? StateClass::Bound : StateClass::AntiBound;
    pt.residue = {0.0, 0.0};
    pt.eta_residual = std::abs(eta(p, pt.z, sheet));
    return pt;
}

SpectralPoint make_real_point(const ModelParams& p, double x) {
    auto sheet = real_root_sheet(p, x);
    if (!sheet) return edge_point(p, x, Sheet::II);
    if (std::abs(x) <= 1.0) return edge_point(p, x, *sheet);

    const ComplexEnergy z = newton_polish(p, {x, 0.0}, *sheet, /*keep_real=*/true);
    if (auto again = real_root_sheet(p, z.real())) sheet = again;

    SpectralPoint pt;
    pt.z = z;
    pt.sheet = *sheet;
    pt.state = classify(*sheet, z);
    double residual = 0.0;
    if (!converged(p, z, *sheet, &residual)) {
        throw SolverError("solve_spectrum: real root at " + std::to_string(x) +
                          " does not satisfy eta on its sheet (residual " + std::to_string(residual) + ")");
    }
    pt.eta_residual = residual;
    pt.residue = 1.0 / eta_derivative(p, z, *sheet);
    return pt;
}

SpectralPoint make_complex_point(const ModelParams& p, ComplexEnergy z0) {
    const double r1 = std::abs(eta(p, z0, Sheet::I));
    const double r2 = std::abs(eta(p, z0, Sheet::II));
    const Sheet sheet = r1 <= r2 ? Sheet::I : Sheet::II;
    ComplexEnergy z = newton_polish(p, z0, sheet, /*keep_real=*/false);

    double residual = 0.0;
    if (!converged(p, z, sheet, &residual)) {
        throw SolverError("solve_spectrum: complex root fails both sheet residuals (residual " +
                          std::to_string(residual) + ")");
    }
    if (std::abs(z.imag()) < kRealTolerance) z = {z.real(), 0.0};

    SpectralPoint pt;
    pt.z = z;
    pt.sheet = sheet;
    pt.state = classify(sheet, z);
    pt.eta_residual = residual;
    pt.residue = 1.0 / eta_derivative(p, z, sheet);
    return pt;
}

}  // namespace

std::string_view to_string(StateClass c) noexcept {
    switch (c) {
        case StateClass::Bound: return "bound";
        case StateClass::AntiBound: return "antibound";
        case StateClass::Resonance: return "resonance";
        case StateClass::AntiResonance: return "antiresonance";
    }
    return "?";
}

const SpectralPoint* SpectrumResult::nearest_real_state(BandEdge edge) const noexcept {
    const SpectralPoint* best = nullptr;
    for (const auto& pt : points) {
        if (pt.z.imag() != 0.0) continue;
        const double x = pt.z.real();
        if (edge == BandEdge::Lower) {
            if (x <= -1.0 && (!best || x > best->z.real())) best = &pt;
        } else {
            if (x >= 1.0 && (!best || x < best->z.real())) best = &pt;
        }
    }
    return best;
}

RealPolynomial squared_polynomial(const ModelParams& p) {
    validate(p);
    const double e = p.epsilon_d;
    const double g2 = p.g * p.g;
    if (p.kind == ModelKind::InfiniteSideCoupled) {
        // (z - e)^2 (z^2 - 1) - g^4
        return {-e * e - g2 * g2, 2.0 * e, e * e - 1.0, -2.0 * e, 1.0};
    }
    // ((1 - 2g^2) z - e)^2 - 4 g^4 (z^2 - 1)
    const double a = 1.0 - 2.0 * g2;
    const double lead = 1.0 - 4.0 * g2;
    if (is_model_two_linear(p)) {
        if (e == 0.0) {
            throw DegenerateSpectrum("Model II at g = 1/2 and eps_d = 0 has no discrete solution");
        }
        return {e * e + 0.25, -e};
    }
    return {e * e + 4.0 * g2 * g2, -2.0 * a * e, lead};
}

SpectrumResult solve_spectrum(const ModelParams& p) {
    validate(p);
    SpectrumResult out;
    out.params = p;
    if (p.kind == ModelKind::SemiInfiniteEndpoint) {
        out.epsilon_A_hint = -(1.0 - 2.0 * p.g * p.g);
    }

    if (p.g == 0.0) {
        // Decoupled level: a true eigenstate with unit weight.
        SpectralPoint pt;
        pt.z = {p.epsilon_d, 0.0};
        pt.sheet = Sheet::I;
        pt.state = StateClass::Bound;
        pt.residue = {1.0, 0.0};
        out.points.push_back(pt);
    } else {
        const RealPolynomial poly = squared_polynomial(p);
        for (const ComplexEnergy& root : polynomial_roots(poly)) {
            if (std::abs(root.imag()) < kRealTolerance * std::max(1.0, std::abs(root.real())) &&
                std::abs(root.real()) > 1.0 - 1e-12) {
                out.points.push_back(make_real_point(p, root.real()));
            } else {
                out.points.push_back(make_complex_point(p, root));
            }
        }
    }

    std::sort(out.points.begin(), out.points.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });

    if (const SpectralPoint* near = out.nearest_real_state(BandEdge::Lower)) {
        const double gap = near->z.real() + 1.0;
        out.delta_q = gap;
        out.t_q = gap == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(gap);
    }
    return out;
}

ZoneScales gap_and_timescale(const SpectrumResult& spectrum) {
    const ModelParams& p = spectrum.params;
    ZoneScales z;
    z.delta_q = spectrum.delta_q;
    z.t_q = spectrum.t_q;
    z.t_2 = 1.0;
    if (p.kind == ModelKind::InfiniteSideCoupled && p.epsilon_d > -1.0) {
        const double shifted = 1.0 + p.epsilon_d;
        z.t_2 = (5.0 + p.epsilon_d) / (2.0 * shifted);
        z.t_3 = std::sqrt(2.0 + p.epsilon_d) / shifted;
        z.t_4 = std::pow(2.0 * shifted, -2.0 / 3.0);
        if (p.g > 0.0) {
            z.t_q_closed_form = 2.0 * shifted * shifted / (p.g * p.g * p.g * p.g);
        }
    }
    return z;
}

ZoneScales gap_and_timescale(const ModelParams& p) { return gap_and_timescale(solve_spectrum(p)); }

double find_absorption_point(ModelKind kind, double g, BandEdge edge, std::pair<double, double> bracket) {
    if (kind == ModelKind::InfiniteSideCoupled) {
        throw NoAbsorption(
            "Model I: the diverging density of states at the band edge keeps a bound state for every eps_d");
    }
    auto is_bound = [&](double eps) {
        const SpectrumResult s = solve_spectrum(ModelParams::make(kind, eps, g));
        const SpectralPoint* pt = s.nearest_real_state(edge);
        return pt != nullptr && pt->state == StateClass::Bound;
    };
    double lo = std::min(bracket.first, bracket.second);
    double hi = std::max(bracket.first, bracket.second);
    const bool lo_bound = is_bound(lo);
    if (lo_bound == is_bound(hi)) {
        throw SolverError("find_absorption_point: bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] does not straddle a Bound/AntiBound transition");
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (is_bound(mid) == lo_bound) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double find_exceptional_point(double g) {
    if (!std::isfinite(g) || g < 0.0) throw DomainError("find_exceptional_point: g must be >= 0");
    if (g == 0.0) return 1.0;
    // The coalescing pair and the root near -1 all lie within w = g^{4/3} of
    // the lower edge. In z = -1 + w y with eps_d = -1 - w e the quartic
    // becomes (y + e)^2 y (w y - 2) - 1 with O(1) coefficients, whose
    // discriminant has the sign of the original without its cancellation.
    const double w = std::pow(g, 4.0 / 3.0);
    auto disc = [w](double e) {
        const RealPolynomial scaled{-1.0, -2.0 * e * e, e * e * w - 4.0 * e, 2.0 * e * w - 2.0, w};
        return quartic_discriminant(scaled);
    };
    // Inside (-eps_gamma, -1] the quartic has a complex pair (negative
    // discriminant); below -eps_gamma all four roots are real.
    double lo = 0.0;
    if (!(disc(lo) < 0.0)) throw SolverError("find_exceptional_point: no resonance pair at eps_d = -1");
    double hi = 3.0;
    int expansions = 0;
    while (!(disc(hi) > 0.0)) {
        hi *= 2.0;
        if (++expansions > 60) throw SolverError("find_exceptional_point: could not bracket the coalescence");
    }
    while (hi - lo > 1e-14 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (disc(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 1.0 + w * 0.5 * (lo + hi);
}

double persistent_bound_expansion(const ModelParams& p) {
    validate(p);
    if (p.kind != ModelKind::InfiniteSideCoupled) {
        throw DomainError("persistent_bound_expansion: defined for Model I only");
    }
    const double shifted = 1.0 + p.epsilon_d;
    if (shifted <= 0.0) {
        throw SingularParameter("persistent_bound_expansion: requires eps_d > -1");
    }
    const double g4 = p.g * p.g * p.g * p.g;
    return -1.0 - g4 / (2.0 * shifted * shifted);
}

}  // namespace decaylab
