/// @file functions.hpp
/// @brief Closed-form scalar fields with gradients, as used for initial
///        data, manufactured solutions and error norms.
#pragma once

#include <functional>

#include "kgz/types.hpp"

namespace kgz {

/// Scalar function of space carrying its analytic gradient.
struct ScalarFunc {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> grad;
};

/// Scalar function of space and time with spatial gradient.
struct TimeScalarFunc {
    std::function<double(const Vec3&, double)> value;
    std::function<Vec3(const Vec3&, double)> grad;

    /// Freezes the time argument.
    ScalarFunc at(double t) const {
        auto v = value;
        auto g = grad;
        return {[v, t](const Vec3& x) { return v(x, t); },
                [g, t](const Vec3& x) { return g(x, t); }};
    }
    explicit operator bool() const { return static_cast<bool>(value); }
};

/// Complex-valued function split into real and imaginary parts.
struct ComplexTimeFunc {
    TimeScalarFunc re, im;
    explicit operator bool() const { return static_cast<bool>(re); }
};

inline ScalarFunc zero_scalar_func() {
    return {[](const Vec3&) { return 0.0; }, [](const Vec3&) { return Vec3{}; }};
}

}  // namespace kgz
