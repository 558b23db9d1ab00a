#pragma once

#include "decaylab/model.hpp"
#include "decaylab/series.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace decaylab::cli {

// Malformed configuration file or flag value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParameterRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;  // 0 for a single value

    bool single() const noexcept { return step == 0.0; }
    std::vector<double> values() const;
};

/// "x" or "lo:hi:step". ConfigError for malformed text, step <= 0 or hi < lo.
ParameterRange parse_range(const std::string& text);

struct TimeGridConfig {
    double t_min = 1.0;
    double t_max = 400.0;
    int points = 200;
    GridSpacing spacing = GridSpacing::Log;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::optional<ModelKind> model;
    std::optional<ParameterRange> epsilon_d;
    std::optional<double> g;
    TimeGridConfig t_grid;
    std::string method = "decomposition";
    std::optional<int> lattice_n;
    std::string output;  // empty or "-" writes to stdout
    OutputFormat format = OutputFormat::Csv;
    std::string input;
    bool oracle_fallback = false;
    std::string component = "total";
    std::optional<std::pair<double, double>> bracket;
};

/// Applies the keys present in `j` on top of `cfg`. ConfigError on unknown
/// keys or wrongly typed values.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Reads and applies a JSON config file.
void apply_config_file(RunConfig& cfg, const std::string& path);

ModelParams single_params(const RunConfig& cfg);

}  // namespace decaylab::cli
