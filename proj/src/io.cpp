#include "ctmax/io.hpp"

#include <cmath>
#include <cstdio>

#include "ctmax/types.hpp"

namespace ctmax {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("table row has the wrong number of cells");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_cell(row[j]);
        out << '\n';
    }
}

nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::ordered_json to_json(const Table& table) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto& c = row[j];
            if (const auto* d = std::get_if<double>(&c))
                obj[table.columns[j]] = json_number(*d);
            else if (const auto* i = std::get_if<long long>(&c))
                obj[table.columns[j]] = *i;
            else if (const auto* b = std::get_if<bool>(&c))
                obj[table.columns[j]] = *b;
            else
                obj[table.columns[j]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

}  // namespace ctmax
