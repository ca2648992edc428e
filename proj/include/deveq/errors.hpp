#pragma once

#include <stdexcept>
#include <string>

namespace deveq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched vector/spectrum lengths.
struct DimensionError : Error {
    using Error::Error;
};

// Invalid argument values (wrong sign of t, nonuniform grid, bad cutoff, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Operand outside an operator's domain (e.g. not in Range |A|^r).
struct DomainError : Error {
    using Error::Error;
};

// Structural defects of a model (empty stable spectrum, ...).
struct ModelError : Error {
    using Error::Error;
};

// A check was invoked on data violating its stated hypotheses.
struct PreconditionError : Error {
    using Error::Error;
};

// A certified bound (Lipschitz constant, bilinear norm) fails its requirement.
struct CertificationError : Error {
    using Error::Error;
};

// Fixed-point iteration failed to contract within the iteration budget.
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, double rate)
        : Error(msg), rate_estimate(rate) {}
    double rate_estimate;
};

struct ConfigError : Error {
    using Error::Error;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b)
        throw DimensionError(std::string(where) + ": dimension mismatch (" +
                             std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace deveq
