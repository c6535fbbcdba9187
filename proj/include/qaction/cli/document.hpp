#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qaction::cli {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, bool, std::string>;

struct Flag {
    std::string quantity;
    double reference;
    double measured;
};

// Everything one run writes: the resolved config, unit conventions,
// discrepancy flags, free-form notes, a summary record and a row table.
struct Document {
    std::string schema;  // e.g. "grover"
    std::map<std::string, std::string> config;
    std::vector<Flag> flags;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string schema_id() const { return "qaction." + schema + "/" + std::to_string(kSchemaVersion); }

    const Cell& column_value(std::size_t row, const std::string& column) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == column) return rows.at(row).at(c);
        throw std::out_of_range("no column '" + column + "'");
    }
};

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return v;
            else return std::to_string(v);
        },
        c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_double(v);
                return v;
            } else return v;
        },
        c);
}

inline void write_csv(std::ostream& os, const Document& d) {
    os << "# schema: " << d.schema_id() << '\n';
    os << "# units: hbar=1; log=natural\n";
    for (const auto& [k, v] : d.config) os << "# config: " << k << '=' << v << '\n';
    for (const auto& f : d.flags)
        os << "# flag: " << f.quantity << " reference=" << format_double(f.reference)
           << " measured=" << format_double(f.measured) << " ratio=" << format_double(f.measured / f.reference) << '\n';
    for (const auto& n : d.notes) os << "# note: " << n << '\n';
    for (const auto& [k, v] : d.summary) os << "# summary: " << k << '=' << cell_text(v) << '\n';
    for (std::size_t c = 0; c < d.columns.size(); ++c) os << (c ? "," : "") << d.columns[c];
    os << '\n';
    for (const auto& r : d.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(r[c]));
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Document& d) {
    nlohmann::ordered_json j;
    j["schema"] = d.schema_id();
    j["units"] = {{"hbar", 1}, {"log", "natural"}};
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : d.config) j["config"][k] = v;
    j["flags"] = nlohmann::ordered_json::array();
    for (const auto& f : d.flags)
        j["flags"].push_back(
            {{"quantity", f.quantity}, {"reference", f.reference}, {"measured", f.measured}, {"ratio", f.measured / f.reference}});
    j["notes"] = d.notes;
    j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : d.summary) j["summary"][k] = cell_json(v);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : d.rows) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < d.columns.size(); ++c) row[d.columns[c]] = cell_json(r[c]);
        j["rows"].push_back(std::move(row));
    }
    os << j.dump(2) << '\n';
}

}  // namespace qaction::cli
