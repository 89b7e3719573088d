#pragma once
/// @file table.hpp
/// @brief Tabular results with CSV and JSON serialization.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jcr::cli {

inline constexpr int kFormatVersion = 1;

/// Empty cells (monostate) mark quantities that are undefined at the point.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline Cell maybe(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_cell(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    } visit;
    return std::visit(visit, c);
}

/// JSON value for a cell; numbers go through the same 17-digit text as CSV.
inline nlohmann::ordered_json json_cell(const Cell& c) {
    struct {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return format_number(v);
            return nlohmann::ordered_json::parse(format_number(v));
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
    } visit;
    return std::visit(visit, c);
}

/// `#`-prefixed header, then one block per table: `# table: name`, a column row, data rows.
inline std::string to_csv(const std::vector<std::string>& header, const std::vector<Table>& tables) {
    std::string out;
    for (const auto& h : header) out += "# " + h + "\n";
    for (const auto& t : tables) {
        out += "# table: " + t.name + "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
        out += "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
            out += "\n";
        }
    }
    return out;
}

inline std::string to_json(const std::string& subcommand, const std::vector<std::pair<std::string, std::string>>& config,
                           const std::vector<Table>& tables) {
    nlohmann::ordered_json doc;
    doc["program"] = "jcr-sim";
    doc["subcommand"] = subcommand;
    doc["format_version"] = kFormatVersion;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    doc["config"] = cfg;
    nlohmann::ordered_json tabs = nlohmann::ordered_json::object();
    for (const auto& t : tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& c : row) r.push_back(json_cell(c));
            rows.push_back(std::move(r));
        }
        tabs[t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    doc["tables"] = std::move(tabs);
    return doc.dump(1) + "\n";
}

}  // namespace jcr::cli
