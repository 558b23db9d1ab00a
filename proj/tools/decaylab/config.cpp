#include "decaylab/config.hpp"

#include "decaylab/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace decaylab::cli {

namespace {

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid " + what + ": '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError("invalid " + what + ": '" + text + "'");
    return v;
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

std::vector<double> ParameterRange::values() const {
    if (single()) return {lo};
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

ParameterRange parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() == 1) {
        const double v = parse_number(parts[0], "epsilon_d");
        return {v, v, 0.0};
    }
    if (parts.size() != 3) throw ConfigError("epsilon_d range must be 'lo:hi:step', got '" + text + "'");
    ParameterRange r{parse_number(parts[0], "range lo"), parse_number(parts[1], "range hi"),
                     parse_number(parts[2], "range step")};
    if (!(r.step > 0.0)) throw ConfigError("epsilon_d range step must be positive");
    if (r.hi < r.lo) throw ConfigError("epsilon_d range is empty ('" + text + "')");
    return r;
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* known[] = {"model",  "epsilon_d", "g",     "t_grid",          "method",    "lattice_n",
                                  "output", "format",    "input", "oracle_fallback", "component", "bracket"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }
    try {
        if (j.contains("model")) cfg.model = parse_model_kind(get<std::string>(j, "model"));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("epsilon_d")) {
        const auto& e = j.at("epsilon_d");
        if (e.is_number()) {
            const double v = e.get<double>();
            cfg.epsilon_d = ParameterRange{v, v, 0.0};
        } else if (e.is_string()) {
            cfg.epsilon_d = parse_range(e.get<std::string>());
        } else {
            throw ConfigError("epsilon_d must be a number or a 'lo:hi:step' string");
        }
    }
    if (j.contains("g")) cfg.g = get<double>(j, "g");
    if (j.contains("t_grid")) {
        const auto& tg = j.at("t_grid");
        if (!tg.is_object()) throw ConfigError("t_grid must be an object");
        for (const auto& [key, value] : tg.items()) {
            if (key != "t_min" && key != "t_max" && key != "points" && key != "spacing") {
                throw ConfigError("unknown t_grid key '" + key + "'");
            }
        }
        if (tg.contains("t_min")) cfg.t_grid.t_min = get<double>(tg, "t_min");
        if (tg.contains("t_max")) cfg.t_grid.t_max = get<double>(tg, "t_max");
        if (tg.contains("points")) cfg.t_grid.points = get<int>(tg, "points");
        if (tg.contains("spacing")) {
            try {
                cfg.t_grid.spacing = parse_grid_spacing(get<std::string>(tg, "spacing"));
            } catch (const DomainError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (j.contains("method")) cfg.method = get<std::string>(j, "method");
    if (j.contains("lattice_n")) cfg.lattice_n = get<int>(j, "lattice_n");
    if (j.contains("output")) cfg.output = get<std::string>(j, "output");
    if (j.contains("format")) {
        const auto f = get<std::string>(j, "format");
        if (f == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (f == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw ConfigError("format must be 'csv' or 'json'");
        }
    }
    if (j.contains("input")) cfg.input = get<std::string>(j, "input");
    if (j.contains("oracle_fallback")) cfg.oracle_fallback = get<bool>(j, "oracle_fallback");
    if (j.contains("component")) cfg.component = get<std::string>(j, "component");
    if (j.contains("bracket")) {
        const auto b = get<std::vector<double>>(j, "bracket");
        if (b.size() != 2) throw ConfigError("bracket must hold two numbers");
        cfg.bracket = std::make_pair(b[0], b[1]);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    apply_json(cfg, j);
}

ModelParams single_params(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("model is required");
    if (!cfg.g) throw ConfigError("g is required");
    if (!cfg.epsilon_d) throw ConfigError("epsilon_d is required");
    if (!cfg.epsilon_d->single()) throw ConfigError("this command takes a single epsilon_d, not a range");
    try {
        return ModelParams::make(*cfg.model, cfg.epsilon_d->lo, *cfg.g);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace decaylab::cli
