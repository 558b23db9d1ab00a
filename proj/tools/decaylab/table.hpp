#pragma once

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace decaylab::cli {

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header row, "," separator, "\n" line endings, doubles as %.17g, empty
/// cells for missing values.
void write_csv(std::ostream& out, const Table& table);

/// Array of objects with keys in column order; missing and non-finite
/// values become null.
nlohmann::ordered_json to_json(const Table& table);

std::string format_double(double v);

struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in columns, or -1.
    int column(const std::string& name) const;
};

/// Parses comma-separated text with a header row. Throws DataError on
/// ragged rows or an empty input.
CsvData read_csv(std::istream& in);

}  // namespace decaylab::cli
