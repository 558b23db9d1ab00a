#include "decaylab/series.hpp"

#include "decaylab/asymptotics.hpp"
#include "decaylab/decomposition.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decaylab {

namespace {

SurvivalSample from_amplitude(double t, ComplexEnergy a) {
    SurvivalSample s;
    s.t = t;
    s.A_re = a.real();
    s.A_im = a.imag();
    s.P = std::norm(a);
    return s;
}

}  // namespace

std::string_view to_string(GridSpacing s) noexcept { return s == GridSpacing::Linear ? "linear" : "log"; }

GridSpacing parse_grid_spacing(std::string_view text) {
    if (text == "linear") return GridSpacing::Linear;
    if (text == "log") return GridSpacing::Log;
    throw DomainError("unknown grid spacing '" + std::string(text) + "'");
}

std::vector<double> make_time_grid(double t_min, double t_max, int points, GridSpacing spacing) {
    if (points < 2) throw DomainError("time grid: need at least 2 points");
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_max > t_min)) {
        throw DomainError("time grid: need finite t_min < t_max");
    }
    if (spacing == GridSpacing::Log && !(t_min > 0.0)) throw DomainError("time grid: log spacing needs t_min > 0");
    if (t_min < 0.0) throw DomainError("time grid: t_min must be >= 0");
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        out[i] = spacing == GridSpacing::Linear ? t_min + f * (t_max - t_min)
                                                : t_min * std::pow(t_max / t_min, f);
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

SurvivalSeries compute_oracle_series(const ModelParams& p, const std::vector<double>& times,
                                     std::optional<int> n_sites, EigenBackend backend) {
    validate(p);
    double t_max = 0.0;
    for (double t : times) t_max = std::max(t_max, std::abs(t));
    const int n = n_sites.value_or(default_lattice_size(std::max(t_max, 1.0)));
    const EigenSystem es = diagonalize(FiniteLattice::make(p, n), backend);

    SurvivalSeries out;
    out.method = SeriesMethod::Oracle;
    out.params = p;
    out.samples.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        out.samples[i] = from_amplitude(times[i], survival_amplitude_exact(es, times[i]));
    });
    return out;
}

SurvivalSeries compute_decomposition_series(const ModelParams& p, const std::vector<double>& times, double t_min) {
    const Decomposition dec(p, t_min);
    SurvivalSeries out;
    out.method = SeriesMethod::Decomposition;
    out.params = p;
    out.samples.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const SurvivalComponents c = dec.at(times[i]);
        SurvivalSample s = from_amplitude(times[i], c.total);
        s.P_bound = std::norm(c.bound_sum());
        s.P_background = std::norm(c.background());
        s.P_resonance = std::norm(c.resonance_sum());
        s.background = c.background();
        out.samples[i] = s;
    });
    return out;
}

SurvivalSeries compute_asymptotic_series(const ModelParams& p, const std::vector<double>& times) {
    const Decomposition dec(p);
    std::optional<double> t_q;
    try {
        t_q = gap_and_timescale(p).t_q;
    } catch (const DegenerateSpectrum&) {
        t_q.reset();
    }
    SurvivalSeries out;
    out.method = SeriesMethod::Asymptotic;
    out.params = p;
    out.samples.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        ComplexEnergy bound{};
        ComplexEnergy resonance{};
        for (const auto& pt : dec.points()) {
            if (pt.state == StateClass::Bound) bound += pole_contribution(pt, t);
            if (pt.state == StateClass::Resonance && std::abs(pt.z.real()) < 1.0) resonance += pole_contribution(pt, t);
        }
        const bool far = t_q && std::isfinite(*t_q) && t > *t_q;
        const ComplexEnergy background = far ? far_zone_amplitude(p, t) : near_zone_amplitude(p, t);
        SurvivalSample s = from_amplitude(t, bound + resonance + background);
        s.P_bound = std::norm(bound);
        s.P_background = std::norm(background);
        s.P_resonance = std::norm(resonance);
        s.background = background;
        out.samples[i] = s;
    });
    return out;
}

}  // namespace decaylab
