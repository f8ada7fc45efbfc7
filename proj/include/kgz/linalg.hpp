/// @file linalg.hpp
/// @brief Jacobi-preconditioned conjugate gradients and a dense Cholesky
///        fallback used by tests and small reference solves.
#pragma once

#include <vector>

#include "kgz/sparse.hpp"
#include "kgz/types.hpp"

namespace kgz {

struct CgOptions {
    double rel_tol = 1e-12;
    int max_iter = 0;            // 0: defaults to 10 * n
    bool track_residuals = false;
    // Starting iterate; empty means zero. A guess whose residual already
    // meets the tolerance is returned unchanged after zero iterations,
    // which lets fixed-point loops converge to exact stationarity.
    std::vector<double> initial_guess;
};

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double final_relres = 0.0;
    std::vector<double> residual_history;  // filled when track_residuals is set
};

/// Inverse-diagonal Jacobi preconditioner. Rejects zero or negative
/// diagonal entries (the operators here are all SPD).
std::vector<double> jacobi_precondition(const SparseMatrix& A);

/// Solves A x = b for SPD A, stopping at ||r||_2 <= rel_tol * ||b||_2.
/// b = 0 returns x = 0 after zero iterations. Throws SolverError when the
/// tolerance is not met within max_iter and SolverBreakdown when a search
/// direction has nonpositive curvature.
CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                  const CgOptions& opts = {});

/// Dense symmetric positive definite solve via Cholesky, n <= 2000.
/// Throws SolverBreakdown when a pivot is not positive.
std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                std::vector<double> b);

}  // namespace kgz
