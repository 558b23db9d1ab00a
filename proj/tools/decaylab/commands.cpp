#include "decaylab/commands.hpp"

#include "decaylab/analysis.hpp"
#include "decaylab/asymptotics.hpp"
#include "decaylab/decomposition.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/lattice.hpp"
#include "decaylab/parallel.hpp"
#include "decaylab/series.hpp"
#include "decaylab/spectrum.hpp"
#include "decaylab/table.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace decaylab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

Cell optional_cell(const std::optional<double>& v) {
    if (!v) return std::monostate{};
    return *v;
}

ordered_json optional_json(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

// Writes `text` to the configured output path, or to `out` when none is set.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw ConfigError("cannot write output file '" + cfg.output + "'");
    file << text;
}

void emit_table(const RunConfig& cfg, std::ostream& out, const Table& table) {
    std::ostringstream text;
    if (cfg.format == OutputFormat::Json) {
        text << to_json(table).dump(2) << '\n';
    } else {
        write_csv(text, table);
    }
    emit(cfg, out, text.str());
}

void emit_json(const RunConfig& cfg, std::ostream& out, const ordered_json& report) {
    emit(cfg, out, report.dump(2) + "\n");
}

std::vector<Cell> sample_row(const SurvivalSample& s, SeriesMethod method) {
    return {s.t,
            s.P,
            s.A_re,
            s.A_im,
            optional_cell(s.P_bound),
            optional_cell(s.P_background),
            optional_cell(s.P_resonance),
            std::string(to_string(method))};
}

double parse_cell(const std::string& text, const std::string& column, std::size_t row) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw DataError("row " + std::to_string(row + 1) + ", column " + column + ": not a number ('" + text + "')");
}

SurvivalSeries read_series(const RunConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("analyze needs an input series (--input or \"input\")");
    std::ifstream in(cfg.input);
    if (!in) throw DataError("cannot open input series '" + cfg.input + "'");
    const CsvData csv = read_csv(in);

    const std::string value_column = cfg.component == "background" ? "P_background" : "P";
    if (cfg.component != "total" && cfg.component != "background") {
        throw ConfigError("component must be 'total' or 'background'");
    }
    const int t_col = csv.column("t");
    const int p_col = csv.column(value_column);
    if (t_col < 0 || p_col < 0) throw DataError("input series needs columns 't' and '" + value_column + "'");
    const int method_col = csv.column("method");

    std::string chosen;
    if (method_col >= 0) {
        std::vector<std::string> methods;
        for (const auto& row : csv.rows) {
            if (std::find(methods.begin(), methods.end(), row[method_col]) == methods.end()) {
                methods.push_back(row[method_col]);
            }
        }
        if (methods.size() == 1) {
            chosen = methods.front();
        } else if (std::find(methods.begin(), methods.end(), cfg.method) != methods.end()) {
            chosen = cfg.method;
        } else {
            throw DataError("input series mixes several methods; select one with --method");
        }
    }

    SurvivalSeries series;
    try {
        series.method = chosen.empty() ? SeriesMethod::Oracle : parse_series_method(chosen);
    } catch (const DomainError& e) {
        throw DataError(e.what());
    }
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        if (method_col >= 0 && row[method_col] != chosen) continue;
        SurvivalSample s;
        s.t = parse_cell(row[t_col], "t", r);
        s.P = parse_cell(row[p_col], value_column, r);
        series.samples.push_back(s);
    }
    if (series.samples.size() < 2) throw DataError("input series has fewer than two samples");
    validate_series(series);
    return series;
}

std::optional<PowerLawFit> fit_if_populated(const SurvivalSeries& s, double lo, double hi) {
    if (!(hi > lo)) return std::nullopt;
    std::size_t count = 0;
    for (const auto& x : s.samples) count += (x.t >= lo && x.t <= hi) ? 1 : 0;
    if (count < kMinSlopePoints) return std::nullopt;
    return fit_power_law(s, lo, hi);
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    if (!cfg.model) throw ConfigError("model is required");
    if (!cfg.g) throw ConfigError("g is required");
    if (!cfg.epsilon_d) throw ConfigError("epsilon_d is required");
    const std::vector<double> values = cfg.epsilon_d->values();
    if (values.empty()) throw ConfigError("epsilon_d range is empty");
    for (double e : values) {
        try {
            validate(ModelParams{*cfg.model, e, *cfg.g});
        } catch (const DomainError& ex) {
            throw ConfigError(ex.what());
        }
    }

    std::vector<std::optional<SpectrumResult>> results(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
        try {
            results[i] = solve_spectrum(ModelParams::make(*cfg.model, values[i], *cfg.g));
        } catch (const DegenerateSpectrum&) {
            results[i].reset();
        }
    });

    Table table;
    table.columns = {"epsilon_d", "root_index", "re_z",       "im_z",    "sheet",
                     "class",     "residue_re", "residue_im", "delta_q", "t_q"};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!results[i]) {
            table.rows.push_back({values[i], std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                                  std::string("degenerate"), std::monostate{}, std::monostate{}, std::monostate{},
                                  std::monostate{}});
            continue;
        }
        const SpectrumResult& r = *results[i];
        for (std::size_t k = 0; k < r.points.size(); ++k) {
            const SpectralPoint& pt = r.points[k];
            table.rows.push_back({values[i], static_cast<long long>(k), pt.z.real(), pt.z.imag(),
                                  std::string(to_string(pt.sheet)), std::string(to_string(pt.state)),
                                  pt.residue.real(), pt.residue.imag(), optional_cell(r.delta_q),
                                  optional_cell(r.t_q)});
        }
    }
    emit_table(cfg, out, table);
    return kExitOk;
}

int cmd_survival(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ModelParams p = single_params(cfg);
    std::vector<double> times;
    try {
        times = make_time_grid(cfg.t_grid.t_min, cfg.t_grid.t_max, cfg.t_grid.points, cfg.t_grid.spacing);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const std::string& m = cfg.method;
    if (m != "oracle" && m != "decomposition" && m != "asymptotic" && m != "all") {
        throw ConfigError("method must be oracle, decomposition, asymptotic or all");
    }
    if (cfg.lattice_n && *cfg.lattice_n < kMinLatticeSites) {
        throw ConfigError("lattice_n must be at least " + std::to_string(kMinLatticeSites));
    }
    const bool want_oracle = m == "oracle" || m == "all";
    const bool want_decomposition = m == "decomposition" || m == "all";
    const bool want_asymptotic = m == "asymptotic" || m == "all";

    std::vector<double> early;
    std::vector<double> late;
    for (double t : times) (t < kDefaultMinTime ? early : late).push_back(t);
    if ((want_decomposition || want_asymptotic) && !early.empty() && !cfg.oracle_fallback) {
        throw TimeRangeError("the contour decomposition needs t >= 1; the grid starts at t = " +
                             format_double(times.front()) + " (enable oracle_fallback or raise t_min)");
    }

    std::optional<SurvivalSeries> oracle;
    if (want_oracle || !early.empty()) oracle = compute_oracle_series(p, times, cfg.lattice_n);

    Table table;
    table.columns = {"t", "P", "A_re", "A_im", "P_bound", "P_background", "P_resonance", "method"};
    const bool with_diff = m == "all";
    if (with_diff) table.columns.push_back("abs_diff");

    auto add_block = [&](const SurvivalSeries& s, const std::vector<double>* diffs) {
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            auto row = sample_row(s.samples[i], s.method);
            if (with_diff) row.push_back(diffs ? Cell((*diffs)[i]) : Cell(std::monostate{}));
            table.rows.push_back(std::move(row));
        }
    };
    // Contour-route series with the oracle standing in below t = 1.
    auto with_fallback = [&](SurvivalSeries late_series) {
        if (early.empty()) return late_series;
        SurvivalSeries merged;
        merged.method = late_series.method;
        merged.params = p;
        for (std::size_t i = 0; i < early.size(); ++i) merged.samples.push_back(oracle->samples[i]);
        for (auto& s : late_series.samples) merged.samples.push_back(s);
        return merged;
    };

    if (want_oracle) add_block(*oracle, nullptr);
    if (want_decomposition) {
        SurvivalSeries dec = late.empty() ? SurvivalSeries{} : compute_decomposition_series(p, late);
        dec.method = SeriesMethod::Decomposition;
        const std::size_t offset = early.size();
        if (oracle && with_diff) {
            std::vector<double> diffs(early.size(), 0.0);
            double worst = 0.0;
            for (std::size_t i = 0; i < dec.samples.size(); ++i) {
                const auto& a = dec.samples[i];
                const auto& b = oracle->samples[offset + i];
                const double d = std::abs(ComplexEnergy{a.A_re - b.A_re, a.A_im - b.A_im});
                diffs.push_back(d);
                worst = std::max(worst, d);
            }
            SurvivalSeries merged = with_fallback(dec);
            merged.method = SeriesMethod::Decomposition;
            add_block(merged, &diffs);
            err << "max |A_decomposition - A_oracle| = " << format_double(worst) << '\n';
        } else {
            SurvivalSeries merged = with_fallback(dec);
            merged.method = SeriesMethod::Decomposition;
            add_block(merged, nullptr);
        }
    }
    if (want_asymptotic) {
        try {
            SurvivalSeries asym = late.empty() ? SurvivalSeries{} : compute_asymptotic_series(p, late);
            SurvivalSeries merged = with_fallback(asym);
            merged.method = SeriesMethod::Asymptotic;
            add_block(merged, nullptr);
        } catch (const DomainError& e) {
            if (m != "all") throw;
            err << "asymptotic block skipped: " << e.what() << '\n';
        } catch (const SingularParameter& e) {
            if (m != "all") throw;
            err << "asymptotic block skipped: " << e.what() << '\n';
        }
    }
    emit_table(cfg, out, table);
    return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SurvivalSeries raw = read_series(cfg);

    bool averaged = true;
    SurvivalSeries series;
    try {
        series = oscillation_average(raw);
    } catch (const DataError& e) {
        err << "oscillation average skipped: " << e.what() << '\n';
        series = raw;
        averaged = false;
    }
    const SlopeSeries slopes = local_slope(series);
    const std::optional<double> t_cross = detect_crossover(slopes);
    const double t_first = series.samples.front().t;
    const double t_last = series.samples.back().t;

    ordered_json report;
    report["samples"] = series.samples.size();
    report["averaged"] = averaged;
    report["component"] = cfg.component;
    report["global_exponent"] = fit_power_law(series, t_first, t_last).exponent;

    std::optional<ZoneScales> scales;
    if (cfg.model && cfg.g && cfg.epsilon_d) scales = gap_and_timescale(single_params(cfg));

    std::optional<double> near;
    std::optional<double> far;
    std::optional<double> t_q_pred;
    if (scales) {
        t_q_pred = predicted_crossover(*scales);
        const double tq = t_q_pred.value_or(std::numeric_limits<double>::infinity());
        if (auto fit = fit_if_populated(series, std::max(3.0 * scales->t_2, t_first), std::min(tq / 3.0, t_last))) {
            near = fit->exponent;
        }
        if (std::isfinite(tq)) {
            if (auto fit = fit_if_populated(series, std::max(3.0 * tq, t_first), t_last)) far = fit->exponent;
        }
    }
    report["near_exponent"] = optional_json(near);
    report["far_exponent"] = optional_json(far);
    report["t_cross"] = optional_json(t_cross);
    report["t_q_predicted"] = optional_json(t_q_pred);
    if (t_cross && t_q_pred && std::isfinite(*t_q_pred)) {
        report["t_cross_over_t_q"] = *t_cross / *t_q_pred;
    } else {
        report["t_cross_over_t_q"] = nullptr;
    }

    ordered_json zones = ordered_json::array();
    if (scales) {
        ZoneScales z = *scales;
        if (t_q_pred) z.t_q = t_q_pred;
        std::size_t begin = 0;
        const auto& s = series.samples;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            if (i < s.size() && classify_zone(z, s[i].t) == classify_zone(z, s[begin].t)) continue;
            ordered_json row;
            row["zone"] = std::string(to_string(classify_zone(z, s[begin].t)));
            row["t_lo"] = s[begin].t;
            row["t_hi"] = s[i - 1].t;
            row["points"] = i - begin;
            row["exponent"] = i - begin >= 2 ? ordered_json(fit_power_law(series, s[begin].t, s[i - 1].t).exponent)
                                             : ordered_json(nullptr);
            zones.push_back(row);
            begin = i;
        }
    }
    report["zone_table"] = zones;
    emit_json(cfg, out, report);
    return kExitOk;
}

int cmd_transitions(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    if (!cfg.model) throw ConfigError("model is required");
    if (!cfg.g) throw ConfigError("g is required");
    const double g = *cfg.g;
    try {
        validate(ModelParams{*cfg.model, 0.0, g});
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    ordered_json report;
    report["model"] = std::string(to_string(*cfg.model));
    report["g"] = g;
    if (*cfg.model == ModelKind::InfiniteSideCoupled) {
        report["epsilon_A"] = "none: persistent bound state";
        const double eps_gamma = find_exceptional_point(g);
        const double expansion = 1.0 + 1.5 * std::pow(g, 4.0 / 3.0);
        report["epsilon_gamma"] = eps_gamma;
        report["epsilon_gamma_expansion"] = expansion;
        report["expansion_difference"] = eps_gamma - expansion;
        report["expansion_error_scale"] = 2.0 * std::pow(g, 8.0 / 3.0);
    } else {
        const double hint = -(1.0 - 2.0 * g * g);
        const std::pair<double, double> lower = cfg.bracket.value_or(std::make_pair(hint - 1.0, hint + 0.25));
        const std::pair<double, double> upper{-lower.second, -lower.first};
        ordered_json eps_a;
        eps_a["lower"] = find_absorption_point(ModelKind::SemiInfiniteEndpoint, g, BandEdge::Lower, lower);
        eps_a["upper"] = find_absorption_point(ModelKind::SemiInfiniteEndpoint, g, BandEdge::Upper, upper);
        report["epsilon_A"] = eps_a;
        report["epsilon_A_hint"] = hint;
        report["epsilon_gamma"] = nullptr;
    }
    emit_json(cfg, out, report);
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Survival-probability decay in tight-binding impurity models", "decaylab"};
    app.require_subcommand(1);

    struct Flags {
        std::string config, model, g, ed, tmin, tmax, points, spacing, method, lattice_n, out, format, input, component;
        bool oracle_fallback = false;
    };
    Flags flags;
    std::map<std::string, CLI::Option*> opts;
    std::vector<CLI::App*> subs;
    for (const char* name : {"spectrum", "survival", "analyze", "transitions"}) {
        CLI::App* sub = app.add_subcommand(name);
        subs.push_back(sub);
        auto add = [&](const std::string& flag, std::string& target, const std::string& help) {
            opts[std::string(name) + flag] = sub->add_option(flag, target, help);
        };
        add("--config", flags.config, "JSON config file");
        add("--model", flags.model, "I or II");
        add("--g", flags.g, "coupling strength");
        add("--ed", flags.ed, "impurity energy eps_d, or lo:hi:step");
        add("--tmin", flags.tmin, "first time of the grid");
        add("--tmax", flags.tmax, "last time of the grid");
        add("--points", flags.points, "number of grid points");
        add("--spacing", flags.spacing, "linear or log");
        add("--method", flags.method, "oracle, decomposition, asymptotic or all");
        add("--lattice-n", flags.lattice_n, "chain sites of the lattice oracle");
        add("--out", flags.out, "output path (default stdout)");
        add("--format", flags.format, "csv or json");
        add("--input", flags.input, "input series CSV (analyze)");
        add("--component", flags.component, "total or background (analyze)");
        opts[std::string(name) + "--oracle-fallback"] =
            sub->add_flag("--oracle-fallback", flags.oracle_fallback, "use the lattice oracle below t = 1");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "decaylab: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App* sub = nullptr;
    for (CLI::App* s : subs) {
        if (s->parsed()) sub = s;
    }
    const std::string name = sub->get_name();
    auto given = [&](const std::string& flag) { return opts.at(name + flag)->count() > 0; };

    try {
        RunConfig cfg;
        if (given("--config")) apply_config_file(cfg, flags.config);
        nlohmann::json overrides = nlohmann::json::object();
        auto number = [&](const std::string& flag, const std::string& text) {
            try {
                std::size_t used = 0;
                const double v = std::stod(text, &used);
                if (used == text.size()) return v;
            } catch (const std::exception&) {
            }
            throw ConfigError("invalid value for " + flag + ": '" + text + "'");
        };
        if (given("--model")) overrides["model"] = flags.model;
        if (given("--g")) overrides["g"] = number("--g", flags.g);
        if (given("--ed")) overrides["epsilon_d"] = flags.ed;
        nlohmann::json grid = nlohmann::json::object();
        if (given("--tmin")) grid["t_min"] = number("--tmin", flags.tmin);
        if (given("--tmax")) grid["t_max"] = number("--tmax", flags.tmax);
        if (given("--points")) grid["points"] = static_cast<int>(number("--points", flags.points));
        if (given("--spacing")) grid["spacing"] = flags.spacing;
        if (!grid.empty()) overrides["t_grid"] = grid;
        if (given("--method")) overrides["method"] = flags.method;
        if (given("--lattice-n")) overrides["lattice_n"] = static_cast<int>(number("--lattice-n", flags.lattice_n));
        if (given("--out")) overrides["output"] = flags.out;
        if (given("--format")) overrides["format"] = flags.format;
        if (given("--input")) overrides["input"] = flags.input;
        if (given("--component")) overrides["component"] = flags.component;
        if (given("--oracle-fallback")) overrides["oracle_fallback"] = flags.oracle_fallback;
        apply_json(cfg, overrides);

        if (name == "spectrum") return cmd_spectrum(cfg, out, err);
        if (name == "survival") return cmd_survival(cfg, out, err);
        if (name == "analyze") return cmd_analyze(cfg, out, err);
        return cmd_transitions(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "decaylab: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const TimeRangeError& e) {
        err << "decaylab: time range: " << e.what() << '\n';
        return kExitRange;
    } catch (const DataError& e) {
        err << "decaylab: input data: " << e.what() << '\n';
        return kExitData;
    } catch (const DomainError& e) {
        err << "decaylab: invalid parameter: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SingularParameter& e) {
        err << "decaylab: invalid parameter: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "decaylab: solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace decaylab::cli
