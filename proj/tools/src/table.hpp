#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace confnet::cli {

/// Rectangular result set rendered as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    void add_row(std::vector<nlohmann::json> row);
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_double(double v);

/// Cell value; non-finite doubles print as inf/nan in CSV and null in JSON.
nlohmann::json number(double v);

/// Compact JSON text with a trailing newline; doubles in shortest form.
std::string dump(const nlohmann::json& j);

}  // namespace confnet::cli
