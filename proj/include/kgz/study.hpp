/// @file study.hpp
/// @brief Mesh refinement studies: the six tabulated error measures per
///        resolution plus observed orders.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgz/scheme.hpp"

namespace kgz {

/// Time step selection per mesh: proportional to h, half of h, or fixed.
struct TauRule {
    enum class Kind { H, HalfH, Const };
    Kind kind = Kind::H;
    double value = 0.0;  // Const only

    double tau_for(double h) const;
    std::string str() const;
    /// Accepts "h", "h/2", "const:<v>", or a bare number (treated as const).
    static TauRule parse(const std::string& text);
};

struct ConvergenceRow {
    int M = 0;
    double h = 0.0, tau = 0.0;
    // Superclose nodal-interpolant gaps and postprocessed errors in H1,
    // then the L2 errors of the field rate and the density.
    double err_Ihu_H1 = 0, err_I2hu_H1 = 0;
    double err_Ihphi_H1 = 0, err_I2hphi_H1 = 0;
    double err_p_L2 = 0, err_varphi_L2 = 0;
    /// Plain H1 distance of the field to the exact solution; first order,
    /// kept for the superconvergence comparison.
    double err_u_H1_plain = 0;
};

/// Runs the problem to time T on each resolution (M subdivisions per
/// axis) and measures the final-time errors. Requires an exact solution
/// and even M (the postprocess needs whole macro patches).
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& problem,
                                              const std::vector<int>& Ms,
                                              const TauRule& tau_rule, double T,
                                              const SchemeParams& params = {});

/// log(e_prev / e_cur) / log(M_cur / M_prev); no value when either error
/// sits below the zero guard (1e-9) or there is no previous row.
std::optional<double> observed_order(double err_prev, double err_cur, int M_prev,
                                     int M_cur);

}  // namespace kgz
