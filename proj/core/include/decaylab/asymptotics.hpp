#pragma once

// Closed-form long-time limits of the lower-edge background integral.

#include "decaylab/model.hpp"
#include "decaylab/zone_scales.hpp"

#include <optional>
#include <string_view>

namespace decaylab {

enum class Zone { NearZone, FarZone, Crossover, PreAsymptotic };

std::string_view to_string(Zone z) noexcept;

/// F(tau; t) = int_0^inf e^{-s tau} sqrt(s^2 - 2 i t s) ds, by Gauss-Laguerre
/// with a tanh-sinh fallback when t * tau is small. Requires tau >= 1, t > 0.
ComplexEnergy f_bar(double tau, double t);

/// Model I: e^{3 pi i/4} g^2 e^{it} / (sqrt(2 pi) (1 + eps_d)^2 sqrt(t)).
/// Model II (g = 1/2): -e^{3 pi i/4} e^{it} / (sqrt(2 pi) eps_d sqrt(t)).
/// SingularParameter at eps_d = -1 (Model I) or eps_d = 0 (Model II);
/// DomainError for Model II away from g = 1/2.
ComplexEnergy near_zone_amplitude(const ModelParams& p, double t);

/// Model I: e^{pi i/4} e^{it} / (sqrt(2 pi) g^2 t^{3/2}).
/// Model II (g = 1/2): -e^{pi i/4} e^{it} / (2 sqrt(2 pi) eps_d delta_q t^{3/2})
/// with the signed gap delta_q. FarZoneAbsent when the gap is closed.
ComplexEnergy far_zone_amplitude(const ModelParams& p, double t);

/// NearZone for 3 t_2 < t < t_q / 3, FarZone for t > 3 t_q, Crossover in
/// between, PreAsymptotic up to 3 t_2 regardless of t_q. Without a t_q every
/// t > 3 t_2 is FarZone.
Zone classify_zone(const ZoneScales& scales, double t);

/// Predicted near/far crossover time: the closed form when available,
/// otherwise t_q from the spectrum.
std::optional<double> predicted_crossover(const ZoneScales& scales);

}  // namespace decaylab
