#include "kgz/problems.hpp"

#include <cmath>

namespace kgz {
namespace {

constexpr double kPi = 3.14159265358979323846;

double sech(double s) { return 1.0 / std::cosh(s); }

/// u = e^{-2t} sin(3πx)sin(3πy) + i e^{-3t} sin(2πx)sin(2πy) on the unit
/// square, varphi = 18π² e^{-t} sin(3πx)sin(3πy), phi = e^{-t} s3.
ProblemSpec mms2d() {
    ProblemSpec P;
    P.name = "mms2d";
    P.summary = "manufactured decaying modes on (0,1)^2";
    P.dim = 2;
    P.origin = {0, 0, 0};
    P.extent = {1, 1, 0};
    P.default_T = 1.0;
    P.has_exact = true;

    const double pi = kPi;
    const double c3 = 18.0 * pi * pi;  // = |laplacian| factor of the 3π mode
    auto s3 = [pi](const Vec3& x) { return std::sin(3 * pi * x[0]) * std::sin(3 * pi * x[1]); };
    auto g3 = [pi](const Vec3& x) {
        return Vec3{3 * pi * std::cos(3 * pi * x[0]) * std::sin(3 * pi * x[1]),
                    3 * pi * std::sin(3 * pi * x[0]) * std::cos(3 * pi * x[1]), 0.0};
    };
    auto s2 = [pi](const Vec3& x) { return std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]); };
    auto g2 = [pi](const Vec3& x) {
        return Vec3{2 * pi * std::cos(2 * pi * x[0]) * std::sin(2 * pi * x[1]),
                    2 * pi * std::sin(2 * pi * x[0]) * std::cos(2 * pi * x[1]), 0.0};
    };
    auto scaled = [](auto f, auto g, double amp, double rate) {
        TimeScalarFunc out;
        out.value = [f, amp, rate](const Vec3& x, double t) {
            return amp * std::exp(rate * t) * f(x);
        };
        out.grad = [g, amp, rate](const Vec3& x, double t) {
            const double c = amp * std::exp(rate * t);
            Vec3 v = g(x);
            return Vec3{c * v[0], c * v[1], c * v[2]};
        };
        return out;
    };

    P.exact_u_re = scaled(s3, g3, 1.0, -2.0);
    P.exact_u_im = scaled(s2, g2, 1.0, -3.0);
    P.exact_p_re = scaled(s3, g3, -2.0, -2.0);
    P.exact_p_im = scaled(s2, g2, -3.0, -3.0);
    P.exact_phi = scaled(s3, g3, 1.0, -1.0);
    P.exact_varphi = [s3, c3](const Vec3& x, double t) { return c3 * std::exp(-t) * s3(x); };

    P.u0_re = P.exact_u_re.at(0.0);
    P.u0_im = P.exact_u_im.at(0.0);
    P.u1_re = P.exact_p_re.at(0.0);
    P.u1_im = P.exact_p_im.at(0.0);
    P.varphi0 = scaled(s3, g3, c3, -1.0).at(0.0);
    P.varphi1 = [s3, c3](const Vec3& x) { return -c3 * s3(x); };
    P.phi0 = P.exact_phi.at(0.0);

    P.u_tt_re = [s3](const Vec3& x, double t) { return 4.0 * std::exp(-2 * t) * s3(x); };
    P.u_tt_im = [s2](const Vec3& x, double t) { return 9.0 * std::exp(-3 * t) * s2(x); };
    P.lap_u_re = [s3, c3](const Vec3& x, double t) { return -c3 * std::exp(-2 * t) * s3(x); };
    P.lap_u_im = [s2, pi](const Vec3& x, double t) {
        return -8.0 * pi * pi * std::exp(-3 * t) * s2(x);
    };
    P.phi_t = [s3](const Vec3& x, double t) { return -std::exp(-t) * s3(x); };
    P.lap_phi = [s3, c3](const Vec3& x, double t) { return -c3 * std::exp(-t) * s3(x); };
    P.varphi_t = [s3, c3](const Vec3& x, double t) { return -c3 * std::exp(-t) * s3(x); };

    P.f_u_re = [s3, s2, c3](const Vec3& x, double t) {
        const double a = s3(x), b = s2(x);
        const double usq = std::exp(-4 * t) * a * a + std::exp(-6 * t) * b * b;
        return (5.0 + c3) * std::exp(-2 * t) * a + c3 * std::exp(-3 * t) * a * a +
               usq * std::exp(-2 * t) * a;
    };
    P.f_u_im = [s3, s2, c3, pi](const Vec3& x, double t) {
        const double a = s3(x), b = s2(x);
        const double usq = std::exp(-4 * t) * a * a + std::exp(-6 * t) * b * b;
        return (10.0 + 8.0 * pi * pi) * std::exp(-3 * t) * b +
               c3 * std::exp(-4 * t) * a * b + usq * std::exp(-3 * t) * b;
    };
    P.f_w = [s3, s2, c3](const Vec3& x, double t) {
        const double a = s3(x), b = s2(x);
        return -(1.0 + c3) * std::exp(-t) * a - std::exp(-4 * t) * a * a -
               std::exp(-6 * t) * b * b;
    };
    return P;
}

/// u = (e^{-2t} + i e^{-3t}) sin(πx)sin(πy)sin(πz) on the unit cube,
/// varphi = 3π² e^{-t} m, phi = e^{-t} m.
ProblemSpec mms3d() {
    ProblemSpec P;
    P.name = "mms3d";
    P.summary = "manufactured decaying mode on (0,1)^3";
    P.dim = 3;
    P.origin = {0, 0, 0};
    P.extent = {1, 1, 1};
    P.default_T = 1.0;
    P.has_exact = true;

    const double pi = kPi;
    const double c1 = 3.0 * pi * pi;
    auto m = [pi](const Vec3& x) {
        return std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]);
    };
    auto gm = [pi](const Vec3& x) {
        const double sx = std::sin(pi * x[0]), cx = std::cos(pi * x[0]);
        const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
        const double sz = std::sin(pi * x[2]), cz = std::cos(pi * x[2]);
        return Vec3{pi * cx * sy * sz, pi * sx * cy * sz, pi * sx * sy * cz};
    };
    auto scaled = [m, gm](double amp, double rate) {
        TimeScalarFunc out;
        out.value = [m, amp, rate](const Vec3& x, double t) {
            return amp * std::exp(rate * t) * m(x);
        };
        out.grad = [gm, amp, rate](const Vec3& x, double t) {
            const double c = amp * std::exp(rate * t);
            Vec3 v = gm(x);
            return Vec3{c * v[0], c * v[1], c * v[2]};
        };
        return out;
    };

    P.exact_u_re = scaled(1.0, -2.0);
    P.exact_u_im = scaled(1.0, -3.0);
    P.exact_p_re = scaled(-2.0, -2.0);
    P.exact_p_im = scaled(-3.0, -3.0);
    P.exact_phi = scaled(1.0, -1.0);
    P.exact_varphi = [m, c1](const Vec3& x, double t) { return c1 * std::exp(-t) * m(x); };

    P.u0_re = P.exact_u_re.at(0.0);
    P.u0_im = P.exact_u_im.at(0.0);
    P.u1_re = P.exact_p_re.at(0.0);
    P.u1_im = P.exact_p_im.at(0.0);
    P.varphi0 = scaled(c1, -1.0).at(0.0);
    P.varphi1 = [m, c1](const Vec3& x) { return -c1 * m(x); };
    P.phi0 = P.exact_phi.at(0.0);

    P.u_tt_re = [m](const Vec3& x, double t) { return 4.0 * std::exp(-2 * t) * m(x); };
    P.u_tt_im = [m](const Vec3& x, double t) { return 9.0 * std::exp(-3 * t) * m(x); };
    P.lap_u_re = [m, c1](const Vec3& x, double t) { return -c1 * std::exp(-2 * t) * m(x); };
    P.lap_u_im = [m, c1](const Vec3& x, double t) { return -c1 * std::exp(-3 * t) * m(x); };
    P.phi_t = [m](const Vec3& x, double t) { return -std::exp(-t) * m(x); };
    P.lap_phi = [m, c1](const Vec3& x, double t) { return -c1 * std::exp(-t) * m(x); };
    P.varphi_t = [m, c1](const Vec3& x, double t) { return -c1 * std::exp(-t) * m(x); };

    P.f_u_re = [m, c1](const Vec3& x, double t) {
        const double a = m(x);
        const double usq = (std::exp(-4 * t) + std::exp(-6 * t)) * a * a;
        return (5.0 + c1) * std::exp(-2 * t) * a + c1 * std::exp(-3 * t) * a * a +
               usq * std::exp(-2 * t) * a;
    };
    P.f_u_im = [m, c1](const Vec3& x, double t) {
        const double a = m(x);
        const double usq = (std::exp(-4 * t) + std::exp(-6 * t)) * a * a;
        return (10.0 + c1) * std::exp(-3 * t) * a + c1 * std::exp(-4 * t) * a * a +
               usq * std::exp(-3 * t) * a;
    };
    P.f_w = [m, c1](const Vec3& x, double t) {
        const double a = m(x);
        return -(1.0 + c1) * std::exp(-t) * a - (std::exp(-4 * t) + std::exp(-6 * t)) * a * a;
    };
    return P;
}

/// Standing modes with zero initial velocities; unforced, so the
/// discrete energy must stay constant.
ProblemSpec energy2d() {
    ProblemSpec P;
    P.name = "energy2d";
    P.summary = "unforced standing modes on (0,1)^2 for conservation runs";
    P.dim = 2;
    P.origin = {0, 0, 0};
    P.extent = {1, 1, 0};
    P.default_T = 5.0;
    P.conservative = true;

    const double pi = kPi;
    const double c3 = 18.0 * pi * pi;
    P.u0_re = {[pi](const Vec3& x) { return std::sin(3 * pi * x[0]) * std::sin(3 * pi * x[1]); },
               [pi](const Vec3& x) {
                   return Vec3{3 * pi * std::cos(3 * pi * x[0]) * std::sin(3 * pi * x[1]),
                               3 * pi * std::sin(3 * pi * x[0]) * std::cos(3 * pi * x[1]), 0.0};
               }};
    P.u0_im = {[pi](const Vec3& x) { return std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]); },
               [pi](const Vec3& x) {
                   return Vec3{2 * pi * std::cos(2 * pi * x[0]) * std::sin(2 * pi * x[1]),
                               2 * pi * std::sin(2 * pi * x[0]) * std::cos(2 * pi * x[1]), 0.0};
               }};
    P.u1_re = zero_scalar_func();
    P.u1_im = zero_scalar_func();
    P.varphi0 = {[pi, c3](const Vec3& x) {
                     return c3 * std::sin(3 * pi * x[0]) * std::sin(3 * pi * x[1]);
                 },
                 [pi, c3](const Vec3& x) {
                     return Vec3{c3 * 3 * pi * std::cos(3 * pi * x[0]) * std::sin(3 * pi * x[1]),
                                 c3 * 3 * pi * std::sin(3 * pi * x[0]) * std::cos(3 * pi * x[1]),
                                 0.0};
                 }};
    P.varphi1 = [](const Vec3&) { return 0.0; };
    P.phi0 = zero_scalar_func();  // laplacian(phi0) = varphi1 = 0 with zero trace
    return P;
}

ScalarFunc gaussian2d(double xc, double yc, double amp) {
    return {[=](const Vec3& x) {
                const double dx = x[0] - xc, dy = x[1] - yc;
                return amp * std::exp(-dx * dx - dy * dy);
            },
            [=](const Vec3& x) {
                const double dx = x[0] - xc, dy = x[1] - yc;
                const double g = amp * std::exp(-dx * dx - dy * dy);
                return Vec3{-2.0 * dx * g, -2.0 * dy * g, 0.0};
            }};
}

ScalarFunc gaussian3d(double xc, double amp) {
    return {[=](const Vec3& x) {
                const double dx = x[0] - xc;
                return amp * std::exp(-dx * dx - x[1] * x[1] - x[2] * x[2]);
            },
            [=](const Vec3& x) {
                const double dx = x[0] - xc;
                const double g = amp * std::exp(-dx * dx - x[1] * x[1] - x[2] * x[2]);
                return Vec3{-2.0 * dx * g, -2.0 * x[1] * g, -2.0 * x[2] * g};
            }};
}

ScalarFunc sum(ScalarFunc a, ScalarFunc b) {
    return {[a, b](const Vec3& x) { return a.value(x) + b.value(x); },
            [a, b](const Vec3& x) {
                const Vec3 u = a.grad(x), v = b.grad(x);
                return Vec3{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
            }};
}

/// sech of a paraboloid centered at (0, yc[, zc]).
ScalarFunc sech_bump(int dim, double yc) {
    return {[=](const Vec3& x) {
                const double dy = x[1] - yc;
                double s = x[0] * x[0] + dy * dy;
                if (dim == 3) s += x[2] * x[2];
                return sech(s);
            },
            [=](const Vec3& x) {
                const double dy = x[1] - yc;
                double s = x[0] * x[0] + dy * dy;
                if (dim == 3) s += x[2] * x[2];
                const double f = -sech(s) * std::tanh(s);
                return Vec3{2.0 * x[0] * f, 2.0 * dy * f, dim == 3 ? 2.0 * x[2] * f : 0.0};
            }};
}

/// Two field pulses centered at x = -2 and x = +2 colliding with two
/// density bumps at y = -2 and y = +2; a third pulse grows at the origin
/// through the initial velocities.
ProblemSpec waves2d() {
    ProblemSpec P;
    P.name = "waves2d";
    P.summary = "colliding localized pulses on (-10,10)^2";
    P.dim = 2;
    P.origin = {-10, -10, 0};
    P.extent = {20, 20, 0};
    P.default_T = 5.0;
    P.conservative = true;

    P.u0_re = sum(gaussian2d(-2, 0, 1.0), gaussian2d(2, 0, 1.0));
    P.u0_im = sum(gaussian2d(-2, 0, 0.5), gaussian2d(2, 0, 0.5));
    P.u1_re = gaussian2d(0, 0, 1.0);
    P.u1_im = gaussian2d(0, 0, 0.5);
    P.varphi0 = sum(sech_bump(2, -2.0), sech_bump(2, 2.0));
    P.varphi1 = [](const Vec3& x) { return sech(x[0] * x[0] + x[1] * x[1]); };
    // phi0 comes from the discrete Poisson solve against varphi1.
    return P;
}

ProblemSpec waves3d() {
    ProblemSpec P;
    P.name = "waves3d";
    P.summary = "colliding localized pulses on (-5,5)^3";
    P.dim = 3;
    P.origin = {-5, -5, -5};
    P.extent = {10, 10, 10};
    P.default_T = 1.5;
    P.conservative = true;

    P.u0_re = sum(gaussian3d(-2, 1.0), gaussian3d(2, 1.0));
    P.u0_im = sum(gaussian3d(-2, 0.5), gaussian3d(2, 0.5));
    P.u1_re = gaussian3d(0, 1.0);
    P.u1_im = gaussian3d(0, 0.5);
    P.varphi0 = sum(sech_bump(3, -2.0), sech_bump(3, 2.0));
    P.varphi1 = [](const Vec3& x) {
        return sech(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    };
    return P;
}

}  // namespace

const std::vector<std::string>& problem_names() {
    static const std::vector<std::string> names{"mms2d", "mms3d", "energy2d",
                                                "waves2d", "waves3d"};
    return names;
}

ProblemSpec make_problem(const std::string& name) {
    if (name == "mms2d") return mms2d();
    if (name == "mms3d") return mms3d();
    if (name == "energy2d") return energy2d();
    if (name == "waves2d") return waves2d();
    if (name == "waves3d") return waves3d();
    std::string msg = "unknown problem '" + name + "'; available:";
    for (const auto& n : problem_names()) msg += " " + n;
    throw InvalidArgument(msg);
}

}  // namespace kgz
