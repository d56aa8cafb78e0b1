#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace confnet::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;     // worst observed deviation
    double tolerance = 0.0;  // pass iff metric <= tolerance
    std::string detail;
};

/// cross-form-h, mass-closed-vs-quadrature, exponent-rates, scaling-slopes,
/// error-order, house-coefficients, union-find-bfs, exact-oracle,
/// exact-vs-resampling.
const std::vector<std::string>& check_names();
bool is_check(const std::string& name);

/// With `perturb`, each check compares against a deliberately wrong
/// reference and must fail.
CheckResult run_check(const std::string& name, bool perturb, std::uint64_t seed);

}  // namespace confnet::cli
