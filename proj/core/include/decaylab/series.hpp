#pragma once

// Survival-probability series on a time grid by any of the three routes.

#include "decaylab/analysis.hpp"
#include "decaylab/lattice.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace decaylab {

enum class GridSpacing { Linear, Log };

std::string_view to_string(GridSpacing s) noexcept;
GridSpacing parse_grid_spacing(std::string_view text);

/// `points` samples from t_min to t_max inclusive. DomainError for
/// points < 2, t_max <= t_min, or t_min <= 0 with log spacing.
std::vector<double> make_time_grid(double t_min, double t_max, int points, GridSpacing spacing);

/// Samples with |d>-overlap amplitudes of the finite lattice. The lattice size
/// defaults to default_lattice_size(max t).
SurvivalSeries compute_oracle_series(const ModelParams& p, const std::vector<double>& times,
                                     std::optional<int> n_sites = std::nullopt,
                                     EigenBackend backend = EigenBackend::Tridiagonal);

/// Pole terms plus both edge integrals, with component probabilities and the
/// background amplitude filled in. TimeRangeError below t_min.
SurvivalSeries compute_decomposition_series(const ModelParams& p, const std::vector<double>& times,
                                            double t_min = 1.0);

/// Pole terms plus the closed-form lower-edge background: the near-zone law
/// up to t_q and the far-zone law beyond it (near-zone law throughout when
/// the gap is closed).
SurvivalSeries compute_asymptotic_series(const ModelParams& p, const std::vector<double>& times);

}  // namespace decaylab
