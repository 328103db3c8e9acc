#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ctmax {

using Cell = std::variant<double, long long, bool, std::string>;

/// Rows of named columns, written as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// %.12g, with nan/inf/-inf spelled out.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
/// NaN and infinities become null.
nlohmann::ordered_json to_json(const Table& table);
nlohmann::ordered_json json_number(double v);

}  // namespace ctmax
