#pragma once

#include "json.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace confnet::cli {

/// Bad flag value, unknown config key, malformed range: exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OptionSpec {
    std::string name;  // flag name without leading dashes, also the config key
    std::string default_value;
    std::string help;
    bool flag = false;  // boolean switch; value "true" / "false"
};

/// Resolved option values for one command, all kept as text so that a run
/// replayed from its manifest parses exactly the same input.
class Params {
public:
    Params() = default;
    explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    const std::map<std::string, std::string>& values() const { return values_; }
    bool has(const std::string& name) const { return values_.count(name) != 0; }
    const std::string& text(const std::string& name) const;

    double real(const std::string& name) const;
    int integer(const std::string& name) const;
    std::uint64_t u64(const std::string& name) const;
    bool boolean(const std::string& name) const;
    std::vector<int> int_list(const std::string& name) const;
    std::vector<double> real_list(const std::string& name) const;

private:
    std::map<std::string, std::string> values_;
};

double parse_real(const std::string& s);
long long parse_integer(const std::string& s);

/// "2,3,4", "1..64", "1..4,8,16" (inclusive ranges).
std::vector<int> parse_int_list(const std::string& s);

/// Comma-separated items, each a number or start:stop:step (stop included
/// when it falls on the grid). Grid values are rounded to 12 significant
/// digits so that 0.1:0.3:0.1 yields 0.1, 0.2, 0.3.
std::vector<double> parse_real_list(const std::string& s);

/// Config value to option text: strings verbatim, numbers in shortest
/// form, booleans as true/false, arrays joined with commas.
std::string config_value_text(const nlohmann::json& v);

}  // namespace confnet::cli
