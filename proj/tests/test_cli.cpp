#include "decaylab/commands.hpp"
#include "decaylab/config.hpp"
#include "decaylab/table.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace decaylab;
using namespace decaylab::cli;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "decaylab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = {}) {
    const auto path = std::filesystem::temp_directory_path() / ("decaylab_test_" + name);
    if (!content.empty()) std::ofstream(path) << content;
    return path;
}

CsvData parse_csv(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

CsvData read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    return read_csv(in);
}

std::vector<double> numbers(const CsvData& d, const std::string& name) {
    const int c = d.column(name);
    std::vector<double> out;
    if (c < 0) return out;
    for (const auto& row : d.rows) out.push_back(std::stod(row[c]));
    return out;
}

const std::string& cell(const CsvData& d, std::size_t row, const std::string& name) {
    return d.rows.at(row).at(d.column(name));
}

}  // namespace

TEST(Config, ParseRange) {
    const ParameterRange r = parse_range("-2:2:0.5");
    EXPECT_EQ(r.values().size(), 9u);
    EXPECT_EQ(r.values().back(), 2.0);
    EXPECT_TRUE(parse_range("0.3").single());
    EXPECT_THROW(parse_range("1:0:0.1"), ConfigError);
    EXPECT_THROW(parse_range("0:1:0"), ConfigError);
    EXPECT_THROW(parse_range("a:b"), ConfigError);
}

TEST(Config, RejectsUnknownKeys) {
    RunConfig cfg;
    EXPECT_THROW(apply_json(cfg, nlohmann::json::parse(R"({"modle": "I"})")), ConfigError);
    EXPECT_THROW(apply_json(cfg, nlohmann::json::parse(R"({"g": "x"})")), ConfigError);
    apply_json(cfg, nlohmann::json::parse(R"({"model": "II", "g": 0.5, "epsilon_d": -0.4, "t_grid": {"t_max": 50}})"));
    EXPECT_EQ(cfg.model, ModelKind::SemiInfiniteEndpoint);
    EXPECT_EQ(cfg.t_grid.t_max, 50.0);
    EXPECT_EQ(cfg.t_grid.points, 200);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"spectrum", "--model", "II", "--g", "0.5", "--ed", "1:0:0.1"}).code, kExitConfig);
    EXPECT_EQ(invoke({"spectrum", "--model", "III", "--g", "0.5", "--ed", "0.1"}).code, kExitConfig);
    EXPECT_EQ(invoke({"spectrum", "--config", "/nonexistent/config.json"}).code, kExitConfig);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);
    EXPECT_EQ(invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.4", "--tmin", "0", "--spacing", "log"}).code,
              kExitConfig);
    EXPECT_EQ(invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.4", "--tmin", "0.5", "--tmax", "5",
                      "--points", "5"}).code,
              kExitRange);
    EXPECT_EQ(invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.4", "--tmin", "0.5", "--tmax", "5",
                      "--points", "5", "--oracle-fallback"}).code,
              kExitOk);
    EXPECT_EQ(invoke({"analyze", "--input", temp_file("bad.csv", "t,P\n1,abc\n").string()}).code, kExitData);
    EXPECT_EQ(invoke({"analyze", "--input", "/nonexistent/series.csv"}).code, kExitData);
    EXPECT_EQ(invoke({"transitions", "--model", "II", "--g", "0.5", "--config",
                      temp_file("bracket.json", R"({"bracket": [2.0, 3.0]})").string()}).code,
              kExitSolver);
}

TEST(Cli, CsvIsDeterministic) {
    const std::vector<std::string> args{"survival", "--model", "I", "--g", "0.3", "--ed", "-0.2", "--tmax", "60",
                                        "--points", "40", "--method", "all"};
    const Result a = invoke(args);
    const Result b = invoke(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "t,P,A_re,A_im,P_bound,P_background,P_resonance,method,abs_diff");
}

TEST(Cli, FlagsOverrideConfig) {
    const auto cfg = temp_file("override.json", R"({"model": "II", "g": 0.5, "epsilon_d": -0.4, "method": "decomposition",
        "t_grid": {"t_min": 1, "t_max": 20, "points": 5, "spacing": "linear"}})");
    const Result base = invoke({"survival", "--config", cfg.string()});
    ASSERT_EQ(base.code, kExitOk) << base.err;
    const CsvData a = parse_csv(base.out);
    EXPECT_EQ(a.rows.size(), 5u);
    const Result over = invoke({"survival", "--config", cfg.string(), "--tmax", "40", "--points", "3"});
    ASSERT_EQ(over.code, kExitOk) << over.err;
    const CsvData b = parse_csv(over.out);
    ASSERT_EQ(b.rows.size(), 3u);
    EXPECT_EQ(numbers(b, "t").back(), 40.0);
}

TEST(Cli, OutputFile) {
    const auto path = temp_file("out.csv");
    std::filesystem::remove(path);
    const Result r = invoke({"spectrum", "--model", "II", "--g", "0.5", "--ed", "-1", "--out", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    const CsvData d = read_file(path);
    EXPECT_NEAR(numbers(d, "re_z").at(0), -1.25, 1e-12);
}

TEST(Cli, ModelTwoSweepFlipsAtHalf) {
    const Result r = invoke({"spectrum", "--model", "II", "--g", "0.5", "--ed", "-2:2:0.01"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        const double eps = std::stod(f[0]);
        const std::string& cls = f[5];
        ++rows;
        if (std::abs(eps) < 1e-9) {
            EXPECT_EQ(cls, "degenerate");
        } else if (std::abs(eps) > 0.5 + 1e-9) {
            EXPECT_EQ(cls, "bound") << eps;
        } else if (std::abs(eps) < 0.5 - 1e-9) {
            EXPECT_EQ(cls, "antibound") << eps;
        }
    }
    EXPECT_EQ(rows, 401);
}

TEST(Cli, ModelOneResonanceWindow) {
    const double eps_gamma = 1.4317;
    const Result r = invoke({"spectrum", "--model", "I", "--g", "0.4", "--ed", "-2:2:0.01"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const CsvData d = parse_csv(r.out);
    std::map<double, int> resonances;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const double eps = std::stod(cell(d, i, "epsilon_d"));
        resonances[eps];
        if (cell(d, i, "class") == "resonance") ++resonances[eps];
    }
    for (const auto& [eps, count] : resonances) {
        if (std::abs(std::abs(eps) - eps_gamma) < 0.005) continue;
        EXPECT_EQ(count, std::abs(eps) < eps_gamma ? 1 : 0) << eps;
    }
}

TEST(Cli, TransitionsReports) {
    const Result two = invoke({"transitions", "--model", "II", "--g", "0.5"});
    ASSERT_EQ(two.code, kExitOk) << two.err;
    const auto j2 = nlohmann::json::parse(two.out);
    EXPECT_NEAR(j2["epsilon_A"]["lower"].get<double>(), -0.5, 1e-8);
    EXPECT_NEAR(j2["epsilon_A"]["upper"].get<double>(), 0.5, 1e-8);
    EXPECT_TRUE(j2["epsilon_gamma"].is_null());

    const Result one = invoke({"transitions", "--model", "I", "--g", "0.1"});
    ASSERT_EQ(one.code, kExitOk) << one.err;
    const auto j1 = nlohmann::json::parse(one.out);
    EXPECT_EQ(j1["epsilon_A"].get<std::string>(), "none: persistent bound state");
    EXPECT_NEAR(j1["epsilon_gamma"].get<double>(), 1.0696, 5e-4);

    const auto j0 = nlohmann::json::parse(invoke({"transitions", "--model", "I", "--g", "0"}).out);
    EXPECT_NEAR(j0["epsilon_gamma"].get<double>(), 1.0, 1e-9);
}

TEST(Cli, AllMethodsAgree) {
    const Result r = invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.4", "--tmax", "400", "--method", "all"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const CsvData d = parse_csv(r.out);
    double worst = 0.0;
    int rows = 0;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        if (cell(d, i, "method") != "decomposition") continue;
        ++rows;
        worst = std::max(worst, std::stod(cell(d, i, "abs_diff")));
    }
    EXPECT_EQ(rows, 200);
    EXPECT_LE(worst, 1e-4);
}

TEST(Cli, AnalyzeModelTwoSeries) {
    const auto series = temp_file("series_m2.csv");
    ASSERT_EQ(invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.4", "--tmax", "400", "--points", "4000",
                      "--spacing", "linear", "--out", series.string()}).code,
              kExitOk);
    const Result r = invoke({"analyze", "--input", series.string(), "--model", "II", "--g", "0.5", "--ed", "-0.4"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["averaged"].get<bool>());
    ASSERT_FALSE(j["t_cross"].is_null());
    const double ratio = j["t_cross_over_t_q"].get<double>();
    EXPECT_GE(ratio, 1.0 / 3.0);
    EXPECT_LE(ratio, 3.0);
    ASSERT_FALSE(j["far_exponent"].is_null());
    EXPECT_NEAR(j["far_exponent"].get<double>(), -3.0, 0.3);
    ASSERT_FALSE(j["near_exponent"].is_null());
    EXPECT_NEAR(j["near_exponent"].get<double>(), -1.0, 0.3);
    EXPECT_FALSE(j["zone_table"].empty());
}

TEST(Cli, AnalyzeGapClosedSeries) {
    const auto series = temp_file("series_m2_closed.csv");
    ASSERT_EQ(invoke({"survival", "--model", "II", "--g", "0.5", "--ed", "-0.5", "--tmin", "10", "--tmax", "1000",
                      "--points", "8000", "--spacing", "linear", "--out", series.string()}).code,
              kExitOk);
    const Result r = invoke({"analyze", "--input", series.string(), "--model", "II", "--g", "0.5", "--ed", "-0.5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["t_cross"].is_null());
    EXPECT_TRUE(j["far_exponent"].is_null());
    EXPECT_NEAR(j["near_exponent"].get<double>(), -1.0, 0.2);
}

TEST(Cli, AnalyzePowerLawFixture) {
    std::ostringstream csv;
    csv << "t,P\n";
    for (int i = 0; i < 100; ++i) {
        const double t = std::pow(10.0, 3.0 * i / 99.0);
        csv << format_double(t) << ',' << format_double(0.5 * std::pow(t, -1.7)) << '\n';
    }
    const Result r = invoke({"analyze", "--input", temp_file("powerlaw.csv", csv.str()).string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["global_exponent"].get<double>(), -1.7, 1e-10);
    EXPECT_FALSE(j["averaged"].get<bool>());
}
