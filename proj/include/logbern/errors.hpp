#pragma once

#include <stdexcept>
#include <string>

namespace logbern {

// Argument outside the mathematical domain of an operation (x not in [0,1],
// index out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Structurally invalid parameter (mu <= 0, lambda ordering, bad degree, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid input data (nonpositive samples, unordered partition, bad file).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation needs information that the caller did not provide
// (typically derivatives with the finite-difference fallback disabled).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: non-finite intermediate, quadrature not converging, ...
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace logbern
