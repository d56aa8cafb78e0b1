#include "params.hpp"

#include "table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace confnet::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

double round12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace

double parse_real(const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw UsageError("expected a finite number, got '" + raw + "'");
    }
    return v;
}

long long parse_integer(const std::string& raw) {
    const std::string s = trim(raw);
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw UsageError("expected an integer, got '" + raw + "'");
    }
    return v;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& item : split(s, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(parse_integer(item)));
            continue;
        }
        const long long lo = parse_integer(item.substr(0, dots));
        const long long hi = parse_integer(item.substr(dots + 2));
        if (hi < lo) throw UsageError("empty range '" + item + "'");
        if (hi - lo > 100000) throw UsageError("range too long '" + item + "'");
        for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_real(item));
            continue;
        }
        if (parts.size() != 3) throw UsageError("grid must be start:stop:step, got '" + item + "'");
        const double a = parse_real(parts[0]);
        const double b = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0) || b < a) throw UsageError("grid needs step > 0 and stop >= start: '" + item + "'");
        const double span = (b - a) / step;
        if (span > 1e6) throw UsageError("grid too long '" + item + "'");
        const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
        for (long long i = 0; i < count; ++i) out.push_back(round12(a + static_cast<double>(i) * step));
    }
    return out;
}

std::string config_value_text(const nlohmann::json& v) {
    switch (v.type()) {
        case nlohmann::json::value_t::string: return v.get<std::string>();
        case nlohmann::json::value_t::boolean: return v.get<bool>() ? "true" : "false";
        case nlohmann::json::value_t::number_float: return format_double(v.get<double>());
        case nlohmann::json::value_t::number_integer:
        case nlohmann::json::value_t::number_unsigned: return v.dump();
        case nlohmann::json::value_t::array: {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ',';
                out += config_value_text(v[i]);
            }
            return out;
        }
        default: throw UsageError("unsupported config value " + v.dump());
    }
}

const std::string& Params::text(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw std::logic_error("unknown parameter " + name);
    return it->second;
}

double Params::real(const std::string& name) const {
    try {
        return parse_real(text(name));
    } catch (const UsageError& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

int Params::integer(const std::string& name) const {
    long long v = 0;
    try {
        v = parse_integer(text(name));
    } catch (const UsageError& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw UsageError("--" + name + ": out of range");
    }
    return static_cast<int>(v);
}

std::uint64_t Params::u64(const std::string& name) const {
    const std::string s = trim(text(name));
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw UsageError("--" + name + ": expected an unsigned 64-bit integer, got '" + s + "'");
    }
    return v;
}

bool Params::boolean(const std::string& name) const {
    const std::string& s = text(name);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw UsageError("--" + name + ": expected true or false, got '" + s + "'");
}

std::vector<int> Params::int_list(const std::string& name) const {
    try {
        return parse_int_list(text(name));
    } catch (const UsageError& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

std::vector<double> Params::real_list(const std::string& name) const {
    try {
        return parse_real_list(text(name));
    } catch (const UsageError& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

}  // namespace confnet::cli
