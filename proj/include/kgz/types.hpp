/// @file types.hpp
/// @brief Small shared aliases and error types.
#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace kgz {

using Vec3 = std::array<double, 3>;

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid mesh/quadrature/problem parameters (caller bug or bad config).
struct InvalidArgument : Error {
    using Error::Error;
};

/// Bad CLI flags or config file contents. CLI maps this to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Iterative solver did not reach the requested tolerance.
/// CLI maps this (and derived types) to exit code 3.
struct SolverError : Error {
    double residual = 0.0;
    int iterations = 0;
    SolverError(const std::string& msg, double res, int iters)
        : Error(msg), residual(res), iterations(iters) {}
};

/// Negative curvature encountered: the operator is not SPD.
struct SolverBreakdown : SolverError {
    using SolverError::SolverError;
};

}  // namespace kgz
