#pragma once

#include <stdexcept>
#include <string>

namespace confnet {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Well-formed request the library deliberately does not support
// (e.g. MIMO with min(n_t, n_r) > 2, analytic prism terms for SISO links).
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Iterative evaluation or adaptive quadrature failed to reach tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input too large for an exponential-cost algorithm.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace confnet
