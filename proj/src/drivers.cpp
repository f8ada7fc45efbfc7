#include "kgz/drivers.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kgz/version.hpp"

namespace kgz {
namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

void write_provenance(std::ostream& out, const RunPlan& plan, const ProblemSpec& p) {
    out << "# kgz " << kVersion << " " << plan.command << "\n";
    for (const auto& line : plan.provenance(p)) out << "# " << line << "\n";
}

/// Step count and snapped step size so N * tau == T.
std::pair<int, double> step_layout(const RunPlan& plan, const ProblemSpec& p, double h) {
    const double T = plan.final_time(p);
    const double tau_req = plan.tau_rule.tau_for(h);
    const int N = std::max(1, static_cast<int>(std::lround(T / tau_req)));
    return {N, T / N};
}

std::string rate_cell(const std::optional<double>& order, bool first_row,
                      double err_cur) {
    if (first_row) return "";
    if (err_cur < 1e-9 || !order) return "exact";
    return sci(*order);
}

}  // namespace

void run_convergence(const RunPlan& plan, std::ostream& out) {
    const ProblemSpec problem = make_problem(plan.problem);
    if (!problem.has_exact)
        throw ConfigError("convergence needs a problem with an exact solution; '" +
                          plan.problem + "' has none");
    const auto rows =
        convergence_study(problem, plan.Ms, plan.tau_rule, plan.final_time(problem),
                          plan.params);

    write_provenance(out, plan, problem);
    out << "M,h,tau,err_Ihu_H1,rate,err_I2hu_H1,rate,err_Ihphi_H1,rate,"
           "err_I2hphi_H1,rate,err_p_L2,rate,err_varphi_L2,rate\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const ConvergenceRow& r = rows[i];
        const bool first = (i == 0);
        auto cell = [&](double cur, double prev) {
            return rate_cell(first ? std::nullopt
                                   : observed_order(prev, cur, rows[i - 1].M, r.M),
                             first, cur);
        };
        out << r.M << "," << sci(r.h) << "," << sci(r.tau);
        const ConvergenceRow& pr = rows[first ? i : i - 1];
        out << "," << sci(r.err_Ihu_H1) << "," << cell(r.err_Ihu_H1, pr.err_Ihu_H1);
        out << "," << sci(r.err_I2hu_H1) << "," << cell(r.err_I2hu_H1, pr.err_I2hu_H1);
        out << "," << sci(r.err_Ihphi_H1) << ","
            << cell(r.err_Ihphi_H1, pr.err_Ihphi_H1);
        out << "," << sci(r.err_I2hphi_H1) << ","
            << cell(r.err_I2hphi_H1, pr.err_I2hphi_H1);
        out << "," << sci(r.err_p_L2) << "," << cell(r.err_p_L2, pr.err_p_L2);
        out << "," << sci(r.err_varphi_L2) << ","
            << cell(r.err_varphi_L2, pr.err_varphi_L2);
        out << "\n";
    }
    out.flush();
}

void run_energy(const RunPlan& plan, std::ostream& out) {
    const ProblemSpec problem = make_problem(plan.problem);
    if (!problem.conservative)
        throw ConfigError("energy needs an unforced problem; '" + plan.problem +
                          "' carries forcing");
    const int M = plan.Ms.front();
    TensorMesh mesh(problem.dim, problem.origin, problem.extent, {M, M, M});
    const auto [N, tau] = step_layout(plan, problem, mesh.h(0));

    write_provenance(out, plan, problem);
    out << "n,t,grad_u,l2_u,l2_p,half_l2_varphi,half_grad_phi,half_l4_u,cross,"
           "total,drift\n";

    double E0 = 0.0, max_drift = 0.0;
    RunOptions opts;
    opts.observer = [&](const StepRecord& rec) {
        if (rec.n == 0) E0 = rec.energy.total;
        const double drift = std::abs(rec.energy.total - E0);
        max_drift = std::max(max_drift, drift);
        const EnergyBreakdown& E = rec.energy;
        out << rec.n << "," << sci(rec.t) << "," << sci(E.grad_u) << "," << sci(E.l2_u)
            << "," << sci(E.l2_p) << "," << sci(E.half_l2_varphi) << ","
            << sci(E.half_grad_phi) << "," << sci(E.half_l4_u) << "," << sci(E.cross)
            << "," << sci(E.total) << "," << sci(drift) << "\n";
        out.flush();
    };
    run(mesh, problem, tau, N, plan.params, opts);
    out << "# max_drift_abs=" << sci(max_drift) << "\n";
    out << "# max_drift_rel=" << sci(max_drift / (1.0 + std::abs(E0))) << "\n";
    out.flush();
}

void run_simulate(const RunPlan& plan) {
    const ProblemSpec problem = make_problem(plan.problem);
    const int M = plan.Ms.front();
    TensorMesh mesh(problem.dim, problem.origin, problem.extent, {M, M, M});
    const auto [N, tau] = step_layout(plan, problem, mesh.h(0));

    const std::filesystem::path dir = plan.out.empty() ? "." : plan.out;
    std::filesystem::create_directories(dir);

    RunOptions opts;
    opts.snapshot_times = plan.snapshot_times;
    const RunResult result = run(mesh, problem, tau, N, plan.params, opts);

    const std::string stem = plan.problem + "_M" + std::to_string(M);
    std::vector<std::string> written;
    for (size_t s = 0; s < result.snapshots.size(); ++s) {
        char tbuf[32];
        std::snprintf(tbuf, sizeof tbuf, "%.4f", plan.snapshot_times[s]);
        const std::string name = stem + "_t" + tbuf + ".vtk";
        std::ofstream vtk(dir / name);
        if (!vtk) throw Error("cannot write snapshot file " + (dir / name).string());
        const StepState& st = result.snapshots[s];

        vtk << "# vtk DataFile Version 3.0\n";
        vtk << "kgz " << kVersion << " problem=" << plan.problem << " M=" << M
            << " t=" << tbuf << "\n";
        vtk << "ASCII\nDATASET STRUCTURED_POINTS\n";
        vtk << "DIMENSIONS " << mesh.nodes_along(0) << " " << mesh.nodes_along(1) << " "
            << (mesh.dim() == 3 ? mesh.nodes_along(2) : 1) << "\n";
        vtk << "ORIGIN " << sci(mesh.origin()[0]) << " " << sci(mesh.origin()[1]) << " "
            << sci(mesh.dim() == 3 ? mesh.origin()[2] : 0.0) << "\n";
        vtk << "SPACING " << sci(mesh.h(0)) << " " << sci(mesh.h(1)) << " "
            << sci(mesh.dim() == 3 ? mesh.h(2) : 1.0) << "\n";
        vtk << "POINT_DATA " << mesh.node_count() << "\n";

        auto scalars = [&](const char* field, auto&& value_at) {
            vtk << "SCALARS " << field << " double\nLOOKUP_TABLE default\n";
            for (int n = 0; n < mesh.node_count(); ++n) vtk << sci(value_at(n)) << "\n";
        };
        scalars("abs_u", [&](int n) {
            return std::hypot(st.u.re[n], st.u.im[n]);
        });
        scalars("re_u", [&](int n) { return st.u.re[n]; });
        scalars("im_u", [&](int n) { return st.u.im[n]; });
        scalars("varphi", [&](int n) { return st.varphi[n]; });
        written.push_back(name);
    }

    std::ofstream meta(dir / (stem + "_run.txt"));
    if (!meta) throw Error("cannot write metadata file");
    write_provenance(meta, plan, problem);
    meta << "steps=" << N << "\n";
    meta << "tau_effective=" << sci(tau) << "\n";
    meta << "files=" << written.size() << "\n";
    for (const auto& name : written) meta << name << "\n";
    meta.flush();
}

void run_plan(const RunPlan& plan) {
    if (plan.command == "simulate") {
        run_simulate(plan);
        return;
    }
    auto dispatch = [&](std::ostream& out) {
        if (plan.command == "convergence")
            run_convergence(plan, out);
        else if (plan.command == "energy")
            run_energy(plan, out);
        else
            throw ConfigError("unknown command '" + plan.command + "'");
    };
    if (plan.out.empty()) {
        dispatch(std::cout);
    } else {
        std::ofstream out(plan.out);
        if (!out) throw Error("cannot open output file '" + plan.out + "'");
        dispatch(out);
    }
}

}  // namespace kgz
