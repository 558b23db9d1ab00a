#include "decaylab/table.hpp"

#include "decaylab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace decaylab::cli {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_double(v);
                    } else if constexpr (std::is_same_v<T, long long> || std::is_same_v<T, std::string>) {
                        out << v;
                    }
                },
                row[c]);
        }
        out << '\n';
    }
}

nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            auto& slot = obj[table.columns[c]];
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        slot = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
                    } else if constexpr (std::is_same_v<T, std::monostate>) {
                        slot = nullptr;
                    } else {
                        slot = v;
                    }
                },
                row[c]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

int CsvData::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvData read_csv(std::istream& in) {
    CsvData data;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (header) {
            data.columns = std::move(cells);
            header = false;
            continue;
        }
        if (cells.size() != data.columns.size()) {
            throw DataError("csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(data.columns.size()) + " cells, found " + std::to_string(cells.size()));
        }
        data.rows.push_back(std::move(cells));
    }
    if (header) throw DataError("csv input is empty");
    return data;
}

}  // namespace decaylab::cli
