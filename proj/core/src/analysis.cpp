#include "decaylab/analysis.hpp"

#include "decaylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace decaylab {

namespace {

// Cumulative trapezoid integral of the piecewise-linear interpolant through
// (t_i, y_i), evaluable at any x inside [t_0, t_last].
class LinearIntegral {
public:
    LinearIntegral(const std::vector<double>& t, const std::vector<double>& y) : t_(t), y_(y), cum_(t.size(), 0.0) {
        for (std::size_t i = 1; i < t.size(); ++i) cum_[i] = cum_[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    }

    double at(double x) const {
        auto it = std::upper_bound(t_.begin(), t_.end(), x);
        if (it == t_.begin()) return 0.0;
        std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
        if (i + 1 >= t_.size()) return cum_.back();
        const double frac = (x - t_[i]) / (t_[i + 1] - t_[i]);
        const double yx = y_[i] + frac * (y_[i + 1] - y_[i]);
        return cum_[i] + 0.5 * (x - t_[i]) * (y_[i] + yx);
    }

private:
    const std::vector<double>& t_;
    const std::vector<double>& y_;
    std::vector<double> cum_;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const double* x, const double* y, std::size_t n) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    fit.rms = std::sqrt(sse / static_cast<double>(n));
    return fit;
}

void require_positive(const SurvivalSeries& s, const char* where) {
    for (const auto& sample : s.samples) {
        if (!(sample.P > 0.0) || !std::isfinite(sample.P)) {
            throw DataError(std::string(where) + ": non-positive P at t = " + std::to_string(sample.t));
        }
    }
}

}  // namespace

std::string_view to_string(SeriesMethod m) noexcept {
    switch (m) {
        case SeriesMethod::Oracle: return "oracle";
        case SeriesMethod::Decomposition: return "decomposition";
        case SeriesMethod::Asymptotic: return "asymptotic";
    }
    return "?";
}

SeriesMethod parse_series_method(std::string_view text) {
    if (text == "oracle") return SeriesMethod::Oracle;
    if (text == "decomposition") return SeriesMethod::Decomposition;
    if (text == "asymptotic") return SeriesMethod::Asymptotic;
    throw DomainError("unknown series method '" + std::string(text) + "'");
}

void validate_series(const SurvivalSeries& s) {
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const auto& x = s.samples[i];
        if (!std::isfinite(x.t)) throw DataError("series: non-finite t at row " + std::to_string(i));
        if (i > 0 && !(x.t > s.samples[i - 1].t)) {
            throw DataError("series: t not strictly increasing at row " + std::to_string(i));
        }
        if (!(x.P > 0.0 && x.P <= 1.0 + 1e-12)) {
            throw DataError("series: P outside (0, 1] at t = " + std::to_string(x.t));
        }
    }
}

SurvivalSeries background_component(const SurvivalSeries& s) {
    SurvivalSeries out;
    out.method = s.method;
    out.params = s.params;
    out.samples.reserve(s.samples.size());
    for (const auto& x : s.samples) {
        if (!x.background) throw DataError("background_component: sample at t = " + std::to_string(x.t) + " has no background amplitude");
        SurvivalSample y;
        y.t = x.t;
        y.A_re = x.background->real();
        y.A_im = x.background->imag();
        y.P = std::norm(*x.background);
        y.P_background = y.P;
        y.background = x.background;
        out.samples.push_back(y);
    }
    return out;
}

SurvivalSeries oscillation_average(const SurvivalSeries& s, double period) {
    if (!(period > 0.0)) throw DomainError("oscillation_average: period must be positive");
    const std::size_t n = s.samples.size();
    if (n < 2) throw DataError("oscillation_average: need at least two samples");
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = s.samples[i].t;
    for (std::size_t i = 1; i < n; ++i) {
        if (t[i] - t[i - 1] > period / 8.0) {
            throw DataError("oscillation_average: spacing " + std::to_string(t[i] - t[i - 1]) + " at t = " +
                            std::to_string(t[i]) + " exceeds period/8; resample with >= 8 points per period");
        }
    }

    auto average = [&](auto get) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = get(s.samples[i]);
        LinearIntegral integral(t, y);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = std::max(t.front(), t[i] - 0.5 * period);
            const double hi = std::min(t.back(), t[i] + 0.5 * period);
            out[i] = (integral.at(hi) - integral.at(lo)) / (hi - lo);
        }
        return out;
    };

    SurvivalSeries out = s;
    const auto p = average([](const SurvivalSample& x) { return x.P; });
    for (std::size_t i = 0; i < n; ++i) out.samples[i].P = p[i];
    auto component = [&](std::optional<double> SurvivalSample::*field) {
        for (const auto& x : s.samples) {
            if (!(x.*field)) return;
        }
        const auto avg = average([&](const SurvivalSample& x) { return *(x.*field); });
        for (std::size_t i = 0; i < n; ++i) out.samples[i].*field = avg[i];
    };
    component(&SurvivalSample::P_bound);
    component(&SurvivalSample::P_background);
    component(&SurvivalSample::P_resonance);
    return out;
}

SlopeSeries local_slope(const SurvivalSeries& s, double window_decades) {
    if (!(window_decades > 0.0)) throw DomainError("local_slope: window must be positive");
    require_positive(s, "local_slope");
    const std::size_t n = s.samples.size();
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.samples[i].t > 0.0)) throw DataError("local_slope: t must be positive");
        x[i] = std::log(s.samples[i].t);
        y[i] = std::log(s.samples[i].P);
    }
    SlopeSeries out;
    if (n == 0) return out;
    const double half = 0.5 * window_decades * std::log(10.0);
    std::size_t lo = 0;
    std::size_t hi = 0;  // window is [lo, hi)
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] - half < x.front() || x[i] + half > x.back()) continue;
        while (x[lo] < x[i] - half) ++lo;
        if (hi < lo) hi = lo;
        while (hi < n && x[hi] <= x[i] + half) ++hi;
        const std::size_t count = hi - lo;
        if (count < kMinSlopePoints) continue;
        const LineFit fit = least_squares(&x[lo], &y[lo], count);
        out.samples.push_back({s.samples[i].t, fit.slope, fit.rms});
    }
    return out;
}

std::optional<double> detect_crossover(const SlopeSeries& sl, double level) {
    for (std::size_t i = 1; i < sl.samples.size(); ++i) {
        const auto& a = sl.samples[i - 1];
        const auto& b = sl.samples[i];
        if (a.slope > level && b.slope <= level) {
            const double frac = (a.slope - level) / (a.slope - b.slope);
            return a.t_center + frac * (b.t_center - a.t_center);
        }
    }
    return std::nullopt;
}

PowerLawFit fit_power_law(const SurvivalSeries& s, double t_lo, double t_hi) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& sample : s.samples) {
        if (sample.t < t_lo || sample.t > t_hi) continue;
        if (!(sample.P > 0.0) || !(sample.t > 0.0)) {
            throw DataError("fit_power_law: non-positive value at t = " + std::to_string(sample.t));
        }
        x.push_back(std::log(sample.t));
        y.push_back(std::log(sample.P));
    }
    if (x.size() < 2) {
        throw DataError("fit_power_law: fewer than two samples in [" + std::to_string(t_lo) + ", " +
                        std::to_string(t_hi) + "]");
    }
    const LineFit fit = least_squares(x.data(), y.data(), x.size());
    return {fit.slope, std::exp(fit.intercept), fit.rms, x.size()};
}

std::optional<double> mean_slope(const SlopeSeries& sl, double t_lo, double t_hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& x : sl.samples) {
        if (x.t_center >= t_lo && x.t_center <= t_hi) {
            sum += x.slope;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

}  // namespace decaylab
