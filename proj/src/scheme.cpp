#include "kgz/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "kgz/linalg.hpp"

namespace kgz {
namespace {

using Vec = std::vector<double>;

double max_abs_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const Vec& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

RealField ritz_project(const TensorMesh& mesh, const ScalarFunc& g, double cg_tol) {
    const QuadratureRule rule = gauss_rule(5, mesh.dim());
    const SparseMatrix B = assemble_stiffness(mesh, rule);
    const Vec rhs = gradient_load_vector(mesh, rule, g.grad);
    CgOptions opts;
    opts.rel_tol = cg_tol;
    return prolong_interior(mesh, cg_solve(B, rhs, opts).x);
}

StepState initialize(const TensorMesh& mesh, const ProblemSpec& problem,
                     const SchemeParams& params) {
    if (problem.dim != mesh.dim())
        throw InvalidArgument("initialize: problem '" + problem.name + "' is " +
                              std::to_string(problem.dim) + "D but the mesh is " +
                              std::to_string(mesh.dim()) + "D");
    StepState s;
    s.u.re = ritz_project(mesh, problem.u0_re, params.cg_tol);
    s.u.im = ritz_project(mesh, problem.u0_im, params.cg_tol);
    s.p.re = ritz_project(mesh, problem.u1_re, params.cg_tol);
    s.p.im = ritz_project(mesh, problem.u1_im, params.cg_tol);
    s.varphi = ritz_project(mesh, problem.varphi0, params.cg_tol);
    if (problem.phi0.value) {
        s.phi = ritz_project(mesh, problem.phi0, params.cg_tol);
    } else {
        // laplacian(phi0) = varphi1 weakly: (grad phi0, grad v) = -(varphi1, v)
        const QuadratureRule rule = gauss_rule(5, mesh.dim());
        const SparseMatrix B = assemble_stiffness(mesh, rule);
        Vec rhs = load_vector(mesh, rule, problem.varphi1);
        for (double& v : rhs) v = -v;
        CgOptions opts;
        opts.rel_tol = params.cg_tol;
        s.phi = prolong_interior(mesh, cg_solve(B, rhs, opts).x);
    }
    s.time = 0.0;
    return s;
}

CrankNicolson::CrankNicolson(const TensorMesh& mesh, double tau,
                             const SchemeParams& params)
    : mesh_(mesh), tau_(tau), params_(params),
      rule_(gauss_rule(params.quad_points, mesh.dim())),
      A_(assemble_mass(mesh, rule_)), B_(assemble_stiffness(mesh, rule_)),
      Mu_(A_), My_(A_) {
    if (tau <= 0.0) throw InvalidArgument("time step must be positive");
    if (params.picard_tol <= 0.0) throw InvalidArgument("picard_tol must be positive");
    const double c = 0.5 * tau * tau;
    Mu_.blend(2.0 + c, c, B_);
    My_.blend(2.0, c, B_);
}

StepState CrankNicolson::step(const StepState& prev, const Forcing& forcing,
                              PicardReport* report) const {
    const int n = mesh_.interior_count();
    const double tau = tau_;
    const double t_half = prev.time + 0.5 * tau;

    const Vec ur0 = restrict_interior(mesh_, prev.u.re);
    const Vec ui0 = restrict_interior(mesh_, prev.u.im);
    const Vec pr0 = restrict_interior(mesh_, prev.p.re);
    const Vec pi0 = restrict_interior(mesh_, prev.p.im);
    const Vec x0 = restrict_interior(mesh_, prev.varphi);
    const Vec y0 = restrict_interior(mesh_, prev.phi);

    // Sources evaluated at the step midpoint, integrated with the 5-point
    // rule; zero for conservative problems.
    const QuadratureRule load_rule = gauss_rule(5, mesh_.dim());
    Vec Lur(n, 0.0), Lui(n, 0.0), Lw(n, 0.0);
    if (forcing.f_u_re)
        Lur = load_vector(mesh_, load_rule,
                          [&](const Vec3& x) { return forcing.f_u_re(x, t_half); });
    if (forcing.f_u_im)
        Lui = load_vector(mesh_, load_rule,
                          [&](const Vec3& x) { return forcing.f_u_im(x, t_half); });
    if (forcing.f_w)
        Lw = load_vector(mesh_, load_rule,
                         [&](const Vec3& x) { return forcing.f_w(x, t_half); });

    // Iterate-independent parts of the right-hand sides:
    //   field:     2 A p0 - tau (A+B)(2 u0 + (tau/2) p0) + 2 tau L_u
    //   potential: 2 A y0 - (tau^2/2) B y0 + 2 tau A x0 + 2 tau L_w
    Vec t1(n), t2(n);
    auto base_field_rhs = [&](const Vec& u0v, const Vec& p0v, const Vec& L) {
        Vec w(n), rhs(n);
        for (int i = 0; i < n; ++i) w[i] = 2.0 * u0v[i] + 0.5 * tau * p0v[i];
        A_.multiply(w, t1);
        B_.multiply(w, t2);
        A_.multiply(p0v, rhs);
        for (int i = 0; i < n; ++i)
            rhs[i] = 2.0 * rhs[i] - tau * (t1[i] + t2[i]) + 2.0 * tau * L[i];
        return rhs;
    };
    const Vec base_pr = base_field_rhs(ur0, pr0, Lur);
    const Vec base_pi = base_field_rhs(ui0, pi0, Lui);

    Vec Ax0(n), By0(n), Ay0(n);
    A_.multiply(x0, Ax0);
    B_.multiply(y0, By0);
    A_.multiply(y0, Ay0);
    Vec base_y(n);
    for (int i = 0; i < n; ++i)
        base_y[i] = 2.0 * Ay0[i] - 0.5 * tau * tau * By0[i] + 2.0 * tau * Ax0[i] +
                    2.0 * tau * Lw[i];

    CgOptions cg;
    cg.rel_tol = params_.cg_tol;
    cg.max_iter = params_.cg_max_iter;

    PicardReport rep;
    // Current iterate: full fields for quadrature gathers, interior for algebra.
    ComplexField U_full = prev.u;
    Vec Ur = ur0, Ui = ui0, X = x0;
    RealField X_full = prev.varphi;
    // The previous time level seeds the linear solves; afterwards each
    // sweep starts from the last one, so a stationary right-hand side
    // returns the iterate unchanged and the update reaches exact zero.
    Vec phat_r = pr0, phat_i = pi0, uhat_r(n), uhat_i(n), xhat = x0, yhat = y0;
    ComplexField uhat_full = prev.u;
    Vec S;

    bool converged = false;
    for (int sweep = 1; sweep <= params_.max_picard; ++sweep) {
        RealField phibar(mesh_.node_count());
        for (int i = 0; i < mesh_.node_count(); ++i)
            phibar[i] = 0.5 * (X_full[i] + prev.varphi[i]);

        const ComplexVec F = nonlinear_u_vector(mesh_, rule_, U_full, prev.u, phibar);

        Vec rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = base_pr[i] - 2.0 * tau * F.re[i];
        cg.initial_guess = phat_r;
        CgResult sol = cg_solve(Mu_, rhs, cg);
        rep.linear_iterations.push_back(sol.iterations);
        phat_r = std::move(sol.x);
        for (int i = 0; i < n; ++i) rhs[i] = base_pi[i] - 2.0 * tau * F.im[i];
        cg.initial_guess = phat_i;
        sol = cg_solve(Mu_, rhs, cg);
        rep.linear_iterations.push_back(sol.iterations);
        phat_i = std::move(sol.x);

        for (int i = 0; i < n; ++i) {
            uhat_r[i] = ur0[i] + 0.5 * tau * (phat_r[i] + pr0[i]);
            uhat_i[i] = ui0[i] + 0.5 * tau * (phat_i[i] + pi0[i]);
        }
        uhat_full.re = prolong_interior(mesh_, uhat_r);
        uhat_full.im = prolong_interior(mesh_, uhat_i);

        S = nonlinear_sq_vector(mesh_, rule_, uhat_full, prev.u);
        for (int i = 0; i < n; ++i) rhs[i] = base_y[i] + 2.0 * tau * S[i];
        cg.initial_guess = yhat;
        sol = cg_solve(My_, rhs, cg);
        rep.linear_iterations.push_back(sol.iterations);
        yhat = std::move(sol.x);

        // Recover the density from the potential line: A x = A x0 - (tau/2) B (yhat + y0).
        Vec ysum(n);
        for (int i = 0; i < n; ++i) ysum[i] = yhat[i] + y0[i];
        B_.multiply(ysum, t1);
        for (int i = 0; i < n; ++i) rhs[i] = Ax0[i] - 0.5 * tau * t1[i];
        cg.initial_guess = xhat;
        sol = cg_solve(A_, rhs, cg);
        rep.linear_iterations.push_back(sol.iterations);
        xhat = std::move(sol.x);

        const double du = std::max({max_abs_diff(uhat_r, Ur), max_abs_diff(uhat_i, Ui),
                                    max_abs_diff(xhat, X)});
        rep.update_norms.push_back(du);
        rep.iterations = sweep;
        rep.final_update = du;

        Ur = uhat_r;
        Ui = uhat_i;
        X = xhat;
        U_full = uhat_full;
        X_full = prolong_interior(mesh_, X);

        if (du <= params_.picard_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "picard iteration did not reach %.2e within %d sweeps "
                      "(last update %.2e)",
                      params_.picard_tol, params_.max_picard, rep.final_update);
        throw StepFailure(msg, rep);
    }

    // Residual certificate: the four discrete equations tested against
    // every interior basis function, nonlinear terms at the accepted
    // iterate. All blocks should sit near the Picard tolerance.
    {
        double cert = 0.0;
        Vec r(n), w(n);
        auto track = [&](const Vec& v) { cert = std::max(cert, max_abs(v)); };

        RealField phibar(mesh_.node_count());
        for (int i = 0; i < mesh_.node_count(); ++i)
            phibar[i] = 0.5 * (X_full[i] + prev.varphi[i]);
        const ComplexVec F = nonlinear_u_vector(mesh_, rule_, uhat_full, prev.u, phibar);

        auto field_residuals = [&](const Vec& ph, const Vec& p0v, const Vec& uh,
                                   const Vec& u0v, const Vec& Fc, const Vec& L) {
            // (a): ((p+p0)/2 - (u-u0)/tau, l_j)
            for (int i = 0; i < n; ++i)
                w[i] = 0.5 * (ph[i] + p0v[i]) - (uh[i] - u0v[i]) / tau;
            A_.multiply(w, r);
            track(r);
            // (b): ((p-p0)/tau, l_j) + a((u+u0)/2, l_j) + nonlinear - source
            Vec rb(n);
            for (int i = 0; i < n; ++i) w[i] = (ph[i] - p0v[i]) / tau;
            A_.multiply(w, rb);
            for (int i = 0; i < n; ++i) w[i] = 0.5 * (uh[i] + u0v[i]);
            A_.multiply(w, r);
            for (int i = 0; i < n; ++i) rb[i] += r[i];
            B_.multiply(w, r);
            for (int i = 0; i < n; ++i) rb[i] += r[i] + Fc[i] - L[i];
            track(rb);
        };
        field_residuals(phat_r, pr0, uhat_r, ur0, F.re, Lur);
        field_residuals(phat_i, pi0, uhat_i, ui0, F.im, Lui);

        // (c): (grad (y+y0)/2, grad l_j) + ((x-x0)/tau, l_j)
        Vec rc(n);
        for (int i = 0; i < n; ++i) w[i] = 0.5 * (yhat[i] + y0[i]);
        B_.multiply(w, rc);
        for (int i = 0; i < n; ++i) w[i] = (xhat[i] - x0[i]) / tau;
        A_.multiply(w, r);
        for (int i = 0; i < n; ++i) rc[i] += r[i];
        track(rc);

        // (d): ((y-y0)/tau, l_j) - ((x+x0)/2, l_j) - (sq, l_j) - source
        Vec rd(n);
        for (int i = 0; i < n; ++i) w[i] = (yhat[i] - y0[i]) / tau;
        A_.multiply(w, rd);
        for (int i = 0; i < n; ++i) w[i] = 0.5 * (xhat[i] + x0[i]);
        A_.multiply(w, r);
        for (int i = 0; i < n; ++i) rd[i] -= r[i] + S[i] + Lw[i];
        track(rd);
        rep.residual_certificate = cert;
    }

    StepState next;
    next.u = uhat_full;
    next.p.re = prolong_interior(mesh_, phat_r);
    next.p.im = prolong_interior(mesh_, phat_i);
    next.varphi = X_full;
    next.phi = prolong_interior(mesh_, yhat);
    next.time = prev.time + tau;
    if (report) *report = std::move(rep);
    return next;
}

RunResult run(const TensorMesh& mesh, const ProblemSpec& problem, double tau,
              int nsteps, const SchemeParams& params, const RunOptions& options) {
    if (nsteps < 0) throw InvalidArgument("run: negative step count");
    CrankNicolson scheme(mesh, tau, params);
    Forcing forcing;
    if (problem.has_exact) forcing = {problem.f_u_re, problem.f_u_im, problem.f_w};

    std::vector<int> snap_steps;
    for (double t : options.snapshot_times) {
        const int k = static_cast<int>(std::lround(t / tau));
        if (k < 0 || k > nsteps || std::abs(k * tau - t) > 1e-9 * std::max(1.0, t))
            throw InvalidArgument("snapshot time " + std::to_string(t) +
                                  " is not a step multiple within the run");
        snap_steps.push_back(k);
    }

    RunResult out;
    out.snapshots.resize(snap_steps.size());
    StepState state = initialize(mesh, problem, params);

    auto record = [&](int nstep, const PicardReport& rep) {
        StepRecord r;
        r.n = nstep;
        r.t = state.time;
        r.energy = energy(mesh, scheme.rule(), state);
        r.picard = rep;
        if (options.observer) options.observer(r);
        out.records.push_back(std::move(r));
        for (size_t s = 0; s < snap_steps.size(); ++s)
            if (snap_steps[s] == nstep) out.snapshots[s] = state;
    };

    record(0, PicardReport{});
    for (int nstep = 1; nstep <= nsteps; ++nstep) {
        PicardReport rep;
        state = scheme.step(state, forcing, &rep);
        record(nstep, rep);
    }
    return out;
}

}  // namespace kgz
