/// @file scheme.hpp
/// @brief Energy-conserving Crank-Nicolson stepper for the coupled
///        field/density system in its first-order form.
///
/// Per step the nonlinear midpoint system is solved by Picard iteration:
/// the nonlinear coefficients are frozen at the previous inner iterate,
/// the field half-step reduces to one SPD solve per component, and the
/// density/potential half-step to one SPD solve plus a mass solve. The
/// iteration stops when the max-norm of successive field and density
/// updates drops below picard_tol.
#pragma once

#include <functional>
#include <vector>

#include "kgz/analysis.hpp"
#include "kgz/assembly.hpp"
#include "kgz/fields.hpp"
#include "kgz/mesh.hpp"
#include "kgz/problems.hpp"
#include "kgz/sparse.hpp"

namespace kgz {

struct SchemeParams {
    double picard_tol = 1e-12;  // absolute, max-norm of successive updates
    int max_picard = 100;
    double cg_tol = 1e-12;
    int cg_max_iter = 0;  // 0 keeps the solver default of 10n
    int quad_points = 3;  // stepper rule, per axis
};

struct PicardReport {
    int iterations = 0;
    double final_update = 0.0;
    std::vector<double> update_norms;    // one entry per sweep
    std::vector<int> linear_iterations;  // one entry per inner CG solve
    /// Max-norm residual of the four discrete equations at the accepted
    /// iterate, measured against every interior basis function.
    double residual_certificate = 0.0;
};

/// Picard ran out of sweeps; carries the iteration log.
struct StepFailure : Error {
    PicardReport report;
    StepFailure(const std::string& msg, PicardReport rep)
        : Error(msg), report(std::move(rep)) {}
};

struct Forcing {
    TimeValueFunc f_u_re, f_u_im;  // field equation source
    TimeValueFunc f_w;             // potential equation source
    bool empty() const { return !f_u_re && !f_u_im && !f_w; }
};

/// Elliptic projection: the discrete field matching the gradient action
/// of g on every interior basis function. The right-hand side uses the
/// analytic gradient of g under the 5-point rule.
RealField ritz_project(const TensorMesh& mesh, const ScalarFunc& g,
                       double cg_tol = 1e-12);

/// Projects the initial data of a problem: Ritz projections of the field
/// pair and density, and the compatible initial potential (closed form
/// when the problem carries one, otherwise the discrete Poisson solve
/// against the initial density rate).
StepState initialize(const TensorMesh& mesh, const ProblemSpec& problem,
                     const SchemeParams& params = {});

class CrankNicolson {
  public:
    CrankNicolson(const TensorMesh& mesh, double tau, const SchemeParams& params);

    /// Advances one step of size tau. Throws StepFailure when Picard does
    /// not converge; propagates solver errors from the inner solves.
    StepState step(const StepState& prev, const Forcing& forcing,
                   PicardReport* report = nullptr) const;

    double tau() const { return tau_; }
    const QuadratureRule& rule() const { return rule_; }
    const SparseMatrix& mass() const { return A_; }
    const SparseMatrix& stiffness() const { return B_; }

  private:
    const TensorMesh& mesh_;
    double tau_;
    SchemeParams params_;
    QuadratureRule rule_;
    SparseMatrix A_, B_;
    SparseMatrix Mu_;  // 2A + (tau^2/2)(A + B), field half-step operator
    SparseMatrix My_;  // 2A + (tau^2/2)B, potential half-step operator
};

struct StepRecord {
    int n = 0;
    double t = 0.0;
    EnergyBreakdown energy;
    PicardReport picard;
};

struct RunOptions {
    std::vector<double> snapshot_times;
    std::function<void(const StepRecord&)> observer;  // called per step, n = 0 first
};

struct RunResult {
    std::vector<StepRecord> records;
    std::vector<StepState> snapshots;  // aligned with requested times
};

/// Initializes a problem and advances nsteps steps of size tau, recording
/// the energy breakdown and Picard log per step. Snapshot times are
/// matched to the nearest step. The observer sees records as they form,
/// so partial output survives a failed step.
RunResult run(const TensorMesh& mesh, const ProblemSpec& problem, double tau,
              int nsteps, const SchemeParams& params = {},
              const RunOptions& options = {});

}  // namespace kgz
