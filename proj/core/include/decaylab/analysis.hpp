#pragma once

// Power-law analysis of survival-probability time series.

#include "decaylab/model.hpp"

#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace decaylab {

enum class SeriesMethod { Oracle, Decomposition, Asymptotic };

std::string_view to_string(SeriesMethod m) noexcept;
/// "oracle", "decomposition" or "asymptotic"; DomainError otherwise.
SeriesMethod parse_series_method(std::string_view text);

struct SurvivalSample {
    double t = 0.0;
    double P = 0.0;
    double A_re = 0.0;
    double A_im = 0.0;
    // Probabilities of the individual contributions, when the method has them.
    std::optional<double> P_bound;
    std::optional<double> P_background;
    std::optional<double> P_resonance;
    // Amplitude of the edge background alone.
    std::optional<ComplexEnergy> background;
};

struct SurvivalSeries {
    std::vector<SurvivalSample> samples;
    SeriesMethod method = SeriesMethod::Oracle;
    ModelParams params;
};

struct SlopeSample {
    double t_center = 0.0;
    double slope = 0.0;
    double residual = 0.0;  // RMS deviation of ln P from the fitted line
};

struct SlopeSeries {
    std::vector<SlopeSample> samples;
};

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;
    std::size_t points = 0;
};

inline constexpr std::size_t kMinSlopePoints = 8;

/// Throws DataError unless t is strictly increasing and every P is finite
/// and in (0, 1].
void validate_series(const SurvivalSeries& s);

/// Series whose P is the edge-background probability |A_th|^2 (amplitude
/// fields hold A_th). DataError when samples lack the background amplitude.
SurvivalSeries background_component(const SurvivalSeries& s);

/// Moving average of P (and of the component probabilities) over windows of
/// width `period` centred on each sample, as the mean of the piecewise-linear
/// interpolant; windows are cut at the series ends. Amplitudes are kept raw.
/// DataError when any spacing exceeds period / 8.
SurvivalSeries oscillation_average(const SurvivalSeries& s, double period = std::numbers::pi);

/// Least-squares slope of ln P against ln t over windows `window_decades`
/// wide centred on each sample whose window lies inside the series and holds
/// at least kMinSlopePoints samples. DataError for non-positive P.
SlopeSeries local_slope(const SurvivalSeries& s, double window_decades = 0.5);

/// First t at which the slope crosses -2 from above, interpolated linearly.
std::optional<double> detect_crossover(const SlopeSeries& sl, double level = -2.0);

/// Global log-log least squares over samples with t_lo <= t <= t_hi.
/// DataError with fewer than two samples or non-positive P.
PowerLawFit fit_power_law(const SurvivalSeries& s, double t_lo, double t_hi);

/// Mean of the local slopes with t_center in [t_lo, t_hi]; nullopt if none.
std::optional<double> mean_slope(const SlopeSeries& sl, double t_lo, double t_hi);

}  // namespace decaylab
