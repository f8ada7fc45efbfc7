#include "kgz/linalg.hpp"

#include <cmath>
#include <string>

namespace kgz {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::vector<double> jacobi_precondition(const SparseMatrix& A) {
    std::vector<double> inv = A.diagonal();
    for (int i = 0; i < A.rows(); ++i) {
        if (inv[i] <= 0.0)
            throw InvalidArgument("jacobi_precondition: nonpositive diagonal at row " +
                                  std::to_string(i));
        inv[i] = 1.0 / inv[i];
    }
    return inv;
}

CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                  const CgOptions& opts) {
    const int n = A.rows();
    if (static_cast<int>(b.size()) != n)
        throw InvalidArgument("cg_solve: size mismatch");
    if (opts.rel_tol > 1e-4 || opts.rel_tol <= 0.0)
        throw InvalidArgument("cg_solve: rel_tol must lie in (0, 1e-4]");

    CgResult res;
    res.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return res;  // x = 0 solves exactly, zero iterations

    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;
    const std::vector<double> minv = jacobi_precondition(A);

    std::vector<double> r = b;  // residual for x0 = 0
    std::vector<double> z(n), p(n), Ap(n);
    if (!opts.initial_guess.empty()) {
        if (static_cast<int>(opts.initial_guess.size()) != n)
            throw InvalidArgument("cg_solve: initial_guess size mismatch");
        res.x = opts.initial_guess;
        A.multiply(res.x, Ap);
        for (int i = 0; i < n; ++i) r[i] -= Ap[i];
        const double r0 = norm2(r);
        if (r0 <= opts.rel_tol * bnorm) {
            res.final_relres = r0 / bnorm;
            if (opts.track_residuals) res.residual_history.push_back(r0 / bnorm);
            return res;
        }
    }
    for (int i = 0; i < n; ++i) z[i] = minv[i] * r[i];
    p = z;
    double rz = dot(r, z);
    double rnorm = norm2(r);
    if (opts.track_residuals) res.residual_history.push_back(rnorm / bnorm);

    for (int it = 1; it <= max_iter; ++it) {
        A.multiply(p, Ap);
        const double pAp = dot(p, Ap);
        if (pAp <= 0.0)
            throw SolverBreakdown(
                "cg_solve: nonpositive curvature, matrix is not positive definite",
                rnorm / bnorm, it - 1);
        const double alpha = rz / pAp;
        for (int i = 0; i < n; ++i) res.x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
        rnorm = norm2(r);
        res.iterations = it;
        if (opts.track_residuals) res.residual_history.push_back(rnorm / bnorm);
        if (rnorm <= opts.rel_tol * bnorm) {
            res.final_relres = rnorm / bnorm;
            return res;
        }
        for (int i = 0; i < n; ++i) z[i] = minv[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("cg_solve: no convergence within " + std::to_string(max_iter) +
                          " iterations, relative residual " +
                          std::to_string(rnorm / bnorm),
                      rnorm / bnorm, max_iter);
}

std::vector<double> dense_solve(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    if (n > 2000) throw InvalidArgument("dense_solve: n exceeds 2000");
    if (static_cast<int>(A.size()) != n)
        throw InvalidArgument("dense_solve: size mismatch");

    // In-place lower Cholesky: A = L L^T.
    for (int j = 0; j < n; ++j) {
        double d = A[j][j];
        for (int k = 0; k < j; ++k) d -= A[j][k] * A[j][k];
        if (d <= 0.0)
            throw SolverBreakdown("dense_solve: nonpositive pivot at column " +
                                      std::to_string(j),
                                  d, j);
        const double ljj = std::sqrt(d);
        A[j][j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = A[i][j];
            for (int k = 0; k < j; ++k) s -= A[i][k] * A[j][k];
            A[i][j] = s / ljj;
        }
    }
    // Forward then backward substitution.
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= A[i][k] * b[k];
        b[i] = s / A[i][i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= A[k][i] * b[k];
        b[i] = s / A[i][i];
    }
    return b;
}

}  // namespace kgz
