#include "table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace confnet::cli {

void Table::add_row(std::vector<nlohmann::json> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add_row: column count mismatch");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::json number(double v) { return v; }

namespace {

std::string csv_cell(const nlohmann::json& c) {
    switch (c.type()) {
        case nlohmann::json::value_t::null: return "";
        case nlohmann::json::value_t::boolean: return c.get<bool>() ? "1" : "0";
        case nlohmann::json::value_t::number_float: return format_double(c.get<double>());
        case nlohmann::json::value_t::string: {
            const auto& s = c.get_ref<const std::string&>();
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string quoted = "\"";
            for (char ch : s) {
                if (ch == '"') quoted += '"';
                quoted += ch;
            }
            return quoted + "\"";
        }
        default: return c.dump();
    }
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace confnet::cli
