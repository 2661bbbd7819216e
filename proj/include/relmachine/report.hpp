#pragma once

// Tabular run output: CSV with a '#'-prefixed key=value header block, or a
// JSON mirror of the same content. Numbers are written with 17 significant
// digits so rows round-trip exactly.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace relmachine::cli {

using Cell = std::variant<double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    [[nodiscard]] std::size_t column(const std::string& col) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == col) return i;
        }
        throw std::out_of_range("no column " + col + " in table " + name);
    }
    [[nodiscard]] double number(std::size_t row, const std::string& col) const {
        return std::get<double>(rows.at(row).at(column(col)));
    }
    [[nodiscard]] const std::string& text(std::size_t row, const std::string& col) const {
        return std::get<std::string>(rows.at(row).at(column(col)));
    }
};

struct RunReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Table> tables;

    [[nodiscard]] const Table& table(const std::string& name) const {
        for (const auto& t : tables) {
            if (t.name == name) return t;
        }
        throw std::out_of_range("no table " + name);
    }
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const RunReport& report) {
    for (const auto& [k, v] : report.metadata) {
        os << "# " << k << '=' << v << '\n';
    }
    for (const auto& t : report.tables) {
        os << "# table=" << t.name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << format_cell(row[i]);
            }
            os << '\n';
        }
    }
}

inline nlohmann::ordered_json to_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.metadata) {
        j["metadata"][k] = v;
    }
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : report.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::array();
            for (const auto& c : row) {
                // JSON has no NaN/inf; those go out as strings
                if (const auto* d = std::get_if<double>(&c); d && std::isfinite(*d)) {
                    jr.push_back(*d);
                } else {
                    jr.push_back(format_cell(c));
                }
            }
            jt["rows"].push_back(std::move(jr));
        }
        j["tables"].push_back(std::move(jt));
    }
    return j;
}

inline void write_json(std::ostream& os, const RunReport& report) {
    os << to_json(report).dump(2) << '\n';
}

}  // namespace relmachine::cli
