#include "kgz/study.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace kgz {

double TauRule::tau_for(double h) const {
    switch (kind) {
        case Kind::H: return h;
        case Kind::HalfH: return 0.5 * h;
        default: return value;
    }
}

std::string TauRule::str() const {
    switch (kind) {
        case Kind::H: return "h";
        case Kind::HalfH: return "h/2";
        default: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "const:%.17g", value);
            return buf;
        }
    }
}

TauRule TauRule::parse(const std::string& text) {
    if (text == "h") return {Kind::H, 0.0};
    if (text == "h/2") return {Kind::HalfH, 0.0};
    std::string num = text;
    if (text.rfind("const:", 0) == 0) num = text.substr(6);
    char* end = nullptr;
    const double v = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0' || !(v > 0.0))
        throw ConfigError("cannot parse time-step rule '" + text +
                          "'; use h, h/2, const:<value> or a positive number");
    return {Kind::Const, v};
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& problem,
                                              const std::vector<int>& Ms,
                                              const TauRule& tau_rule, double T,
                                              const SchemeParams& params) {
    if (!problem.has_exact)
        throw InvalidArgument("convergence study needs an exact solution; problem '" +
                              problem.name + "' has none");
    if (Ms.empty()) throw InvalidArgument("convergence study: empty resolution list");
    if (!(T > 0.0)) throw InvalidArgument("convergence study: final time must be positive");

    std::vector<ConvergenceRow> rows;
    for (int M : Ms) {
        if (M < 2 || M % 2 != 0)
            throw InvalidArgument("convergence study: M must be even and at least 2, got " +
                                  std::to_string(M));
        TensorMesh mesh(problem.dim, problem.origin, problem.extent, {M, M, M});
        const double h = mesh.h(0);
        // Snap the step count so N * tau lands exactly on T.
        const double tau_req = tau_rule.tau_for(h);
        const int N = std::max(1, static_cast<int>(std::lround(T / tau_req)));
        const double tau = T / N;

        RunOptions opts;
        opts.snapshot_times = {T};
        const RunResult res = run(mesh, problem, tau, N, params, opts);
        const StepState& fin = res.snapshots.front();

        const MacroPatchSet patches(mesh);
        const ScalarFunc exu_re = problem.exact_u_re.at(T);
        const ScalarFunc exu_im = problem.exact_u_im.at(T);
        const ScalarFunc exp_re = problem.exact_p_re.at(T);
        const ScalarFunc exp_im = problem.exact_p_im.at(T);
        const ScalarFunc exphi = problem.exact_phi.at(T);
        const ScalarFunc exvarphi = {
            [f = problem.exact_varphi, T](const Vec3& x) { return f(x, T); },
            [](const Vec3&) { return Vec3{}; }};

        ConvergenceRow row;
        row.M = M;
        row.h = h;
        row.tau = tau;

        // Nodal-interpolant gaps: coefficients of I_h(exact) - fh.
        ComplexField du{interpolate(mesh, exu_re.value), interpolate(mesh, exu_im.value)};
        for (int i = 0; i < mesh.node_count(); ++i) {
            du.re[i] -= fin.u.re[i];
            du.im[i] -= fin.u.im[i];
        }
        RealField dphi = interpolate(mesh, exphi.value);
        for (int i = 0; i < mesh.node_count(); ++i) dphi[i] -= fin.phi[i];

        const ScalarFunc zero = zero_scalar_func();
        row.err_Ihu_H1 = error_norm(mesh, du, zero, zero, NormKind::H1);
        row.err_Ihphi_H1 = error_norm(mesh, dphi, zero, NormKind::H1);
        row.err_I2hu_H1 =
            postprocessed_error_norm(mesh, patches, fin.u, exu_re, exu_im, NormKind::H1);
        row.err_I2hphi_H1 =
            postprocessed_error_norm(mesh, patches, fin.phi, exphi, NormKind::H1);
        row.err_p_L2 = error_norm(mesh, fin.p, exp_re, exp_im, NormKind::L2);
        row.err_varphi_L2 = error_norm(mesh, fin.varphi, exvarphi, NormKind::L2);
        row.err_u_H1_plain = error_norm(mesh, fin.u, exu_re, exu_im, NormKind::H1);
        rows.push_back(row);
    }
    return rows;
}

std::optional<double> observed_order(double err_prev, double err_cur, int M_prev,
                                     int M_cur) {
    if (err_prev < 1e-9 || err_cur < 1e-9) return std::nullopt;  // zero-error guard
    if (M_prev <= 0 || M_cur <= M_prev) return std::nullopt;
    return std::log(err_prev / err_cur) /
           std::log(static_cast<double>(M_cur) / M_prev);
}

}  // namespace kgz
