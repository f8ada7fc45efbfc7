/// @file problems.hpp
/// @brief Catalog of benchmark problems: two manufactured-solution cases
///        with forcing for convergence studies, one standing-wave energy
///        case, and two localized wave-collision cases.
///
/// Field naming follows the continuous system: u is the complex field
/// envelope, p its time derivative, varphi the real density deviation,
/// phi the auxiliary potential with laplacian(phi) = d/dt varphi.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kgz/functions.hpp"
#include "kgz/types.hpp"

namespace kgz {

using TimeValueFunc = std::function<double(const Vec3&, double)>;

struct ProblemSpec {
    std::string name;
    std::string summary;
    int dim = 2;
    Vec3 origin{}, extent{};
    double default_T = 1.0;
    bool has_exact = false;    // manufactured solution and forcing available
    bool conservative = false; // zero forcing; discrete energy is constant

    // Initial data. phi0 has an empty value function when only varphi1 is
    // known; initialization then solves the discrete Poisson problem
    // laplacian(phi0) = varphi1 instead.
    ScalarFunc u0_re, u0_im, u1_re, u1_im, varphi0;
    std::function<double(const Vec3&)> varphi1;
    ScalarFunc phi0;

    // Exact solution, populated when has_exact.
    TimeScalarFunc exact_u_re, exact_u_im, exact_p_re, exact_p_im, exact_phi;
    TimeValueFunc exact_varphi;

    // Analytic derivative blocks of the exact solution, kept separate
    // from the simplified forcing formulas so consistency tests compare
    // two independent derivations.
    TimeValueFunc u_tt_re, u_tt_im, lap_u_re, lap_u_im;
    TimeValueFunc phi_t, lap_phi, varphi_t;

    // Forcing entering the field equation and the potential equation.
    TimeValueFunc f_u_re, f_u_im, f_w;
};

const std::vector<std::string>& problem_names();

/// Builds a catalog entry. Unknown names raise InvalidArgument listing
/// the available problems.
ProblemSpec make_problem(const std::string& name);

}  // namespace kgz
