/// @file dense_oracle.hpp
/// @brief Slow, dense reference implementations used only by tests.
///
/// Everything here is written independently of the library's assembly and
/// stepping code: its own Gauss points (on the unit interval instead of
/// [-1,1]), its own corner shape functions (on [0,1]^dim instead of the
/// [-1,1]^dim reference cube), dense matrices instead of CSR, and a dense
/// Newton solve with a finite-difference Jacobian instead of the Picard
/// reduction. Agreement with the library is then a real cross-check, not
/// the same code evaluated twice.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kgz/fields.hpp"
#include "kgz/mesh.hpp"
#include "kgz/types.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;
using kgz::ComplexField;
using kgz::RealField;
using kgz::TensorMesh;
using kgz::Vec3;

struct Rule1D {
    std::vector<double> x, w;  // points and weights on [0,1]
};

/// Gauss-Legendre on the unit interval, written out digit by digit.
inline Rule1D unit_gauss(int n) {
    Rule1D r;
    switch (n) {
        case 2:
            r.x = {0.21132486540518711775, 0.78867513459481288225};
            r.w = {0.5, 0.5};
            break;
        case 3:
            r.x = {0.11270166537925831149, 0.5, 0.88729833462074168851};
            r.w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
            break;
        case 5:
            r.x = {0.046910077030668003601, 0.23076534494715845448, 0.5,
                   0.76923465505284154552, 0.95308992296933199640};
            r.w = {0.11846344252809454376, 0.23931433524968323402,
                   0.28444444444444444444, 0.23931433524968323402,
                   0.11846344252809454376};
            break;
        default:
            throw std::invalid_argument("oracle::unit_gauss: n must be 2, 3 or 5");
    }
    return r;
}

/// Corner shape c at s in [0,1]^dim: product of s_d or (1-s_d) per axis.
inline double corner_shape(int c, const double* s, int dim) {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= (c >> d & 1) ? s[d] : 1.0 - s[d];
    return v;
}

/// d/ds_axis of corner shape c.
inline double corner_shape_deriv(int c, const double* s, int dim, int axis) {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) {
        if (d == axis)
            v *= (c >> d & 1) ? 1.0 : -1.0;
        else
            v *= (c >> d & 1) ? s[d] : 1.0 - s[d];
    }
    return v;
}

/// Visits every tensor quadrature point of every element. The callback
/// receives the element's corner node ids, the shape values/physical
/// gradients at the point, the physical position, and the physical weight.
template <typename F>
void for_each_point(const TensorMesh& mesh, int npts, F&& body) {
    const int dim = mesh.dim();
    const int nb = mesh.corners_per_element();
    const Rule1D g = unit_gauss(npts);
    double jac = 1.0;
    for (int d = 0; d < dim; ++d) jac *= mesh.h(d);

    int nodes[8];
    double N[8], dN[8][3];
    const int nq = dim == 3 ? npts * npts * npts : npts * npts;
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        const Vec3 base = mesh.element_base(e);
        for (int q = 0; q < nq; ++q) {
            int rem = q;
            double s[3] = {0.0, 0.0, 0.0};
            double wq = 1.0;
            for (int d = 0; d < dim; ++d) {
                const int idx = rem % npts;
                rem /= npts;
                s[d] = g.x[idx];
                wq *= g.w[idx];
            }
            Vec3 pos{0.0, 0.0, 0.0};
            for (int d = 0; d < dim; ++d) pos[d] = base[d] + mesh.h(d) * s[d];
            for (int c = 0; c < nb; ++c) {
                N[c] = corner_shape(c, s, dim);
                for (int d = 0; d < dim; ++d)
                    dN[c][d] = corner_shape_deriv(c, s, dim, d) / mesh.h(d);
            }
            body(nodes, nb, N, dN, pos, wq * jac);
        }
    }
}

/// Dense mass matrix over all nodes.
inline Dense mass_dense(const TensorMesh& mesh, int npts) {
    Dense M(mesh.node_count(), std::vector<double>(mesh.node_count(), 0.0));
    for_each_point(mesh, npts,
                   [&](const int* nodes, int nb, const double* N, const double (*)[3],
                       const Vec3&, double w) {
                       for (int a = 0; a < nb; ++a)
                           for (int b = 0; b < nb; ++b)
                               M[nodes[a]][nodes[b]] += w * N[a] * N[b];
                   });
    return M;
}

/// Dense stiffness matrix over all nodes.
inline Dense stiffness_dense(const TensorMesh& mesh, int npts) {
    const int dim = mesh.dim();
    Dense K(mesh.node_count(), std::vector<double>(mesh.node_count(), 0.0));
    for_each_point(mesh, npts,
                   [&](const int* nodes, int nb, const double*, const double (*dN)[3],
                       const Vec3&, double w) {
                       for (int a = 0; a < nb; ++a)
                           for (int b = 0; b < nb; ++b) {
                               double s = 0.0;
                               for (int d = 0; d < dim; ++d) s += dN[a][d] * dN[b][d];
                               K[nodes[a]][nodes[b]] += w * s;
                           }
                   });
    return K;
}

/// Restricts a dense all-node matrix to the interior block.
inline Dense interior_block(const TensorMesh& mesh, const Dense& full) {
    const int n = mesh.interior_count();
    Dense M(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M[i][j] = full[mesh.node_of_interior(i)][mesh.node_of_interior(j)];
    return M;
}

/// (f, l_j) over interior test functions.
inline std::vector<double> load(const TensorMesh& mesh, int npts,
                                const std::function<double(const Vec3&)>& f) {
    std::vector<double> out(mesh.interior_count(), 0.0);
    for_each_point(mesh, npts,
                   [&](const int* nodes, int nb, const double* N, const double (*)[3],
                       const Vec3& pos, double w) {
                       const double fv = f(pos);
                       for (int a = 0; a < nb; ++a) {
                           const int dof = mesh.interior_of(nodes[a]);
                           if (dof >= 0) out[dof] += w * fv * N[a];
                       }
                   });
    return out;
}

/// ((phibar + (|un|^2+|uo|^2)/2) * (un+uo)/2, l_j) over interior tests.
inline void nonlinear_u(const TensorMesh& mesh, int npts, const ComplexField& un,
                        const ComplexField& uo, const RealField& phibar,
                        std::vector<double>& out_re, std::vector<double>& out_im) {
    out_re.assign(mesh.interior_count(), 0.0);
    out_im.assign(mesh.interior_count(), 0.0);
    for_each_point(
        mesh, npts,
        [&](const int* nodes, int nb, const double* N, const double (*)[3],
            const Vec3&, double w) {
            double nr = 0, ni = 0, or_ = 0, oi = 0, ph = 0;
            for (int a = 0; a < nb; ++a) {
                nr += un.re[nodes[a]] * N[a];
                ni += un.im[nodes[a]] * N[a];
                or_ += uo.re[nodes[a]] * N[a];
                oi += uo.im[nodes[a]] * N[a];
                ph += phibar[nodes[a]] * N[a];
            }
            const double coeff =
                ph + 0.5 * (nr * nr + ni * ni + or_ * or_ + oi * oi);
            const double br = 0.5 * (nr + or_), bi = 0.5 * (ni + oi);
            for (int a = 0; a < nb; ++a) {
                const int dof = mesh.interior_of(nodes[a]);
                if (dof < 0) continue;
                out_re[dof] += w * coeff * br * N[a];
                out_im[dof] += w * coeff * bi * N[a];
            }
        });
}

/// ((|un|^2+|uo|^2)/2, l_j) over interior tests.
inline std::vector<double> nonlinear_sq(const TensorMesh& mesh, int npts,
                                        const ComplexField& un,
                                        const ComplexField& uo) {
    std::vector<double> out(mesh.interior_count(), 0.0);
    for_each_point(mesh, npts,
                   [&](const int* nodes, int nb, const double* N, const double (*)[3],
                       const Vec3&, double w) {
                       double nr = 0, ni = 0, or_ = 0, oi = 0;
                       for (int a = 0; a < nb; ++a) {
                           nr += un.re[nodes[a]] * N[a];
                           ni += un.im[nodes[a]] * N[a];
                           or_ += uo.re[nodes[a]] * N[a];
                           oi += uo.im[nodes[a]] * N[a];
                       }
                       const double sq =
                           0.5 * (nr * nr + ni * ni + or_ * or_ + oi * oi);
                       for (int a = 0; a < nb; ++a) {
                           const int dof = mesh.interior_of(nodes[a]);
                           if (dof >= 0) out[dof] += w * sq * N[a];
                       }
                   });
    return out;
}

/// Dense LU solve with partial pivoting (the matrices here are small and
/// not symmetric, so Cholesky is not an option).
inline std::vector<double> lu_solve(Dense A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[p][k])) p = i;
        if (A[p][k] == 0.0) throw std::runtime_error("oracle::lu_solve: singular");
        std::swap(A[p], A[k]);
        std::swap(b[p], b[k]);
        piv[k] = p;
        for (int i = k + 1; i < n; ++i) {
            const double m = A[i][k] / A[k][k];
            A[i][k] = m;
            for (int j = k + 1; j < n; ++j) A[i][j] -= m * A[k][j];
            b[i] -= m * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * b[j];
        b[i] = s / A[i][i];
    }
    return b;
}

/// One midpoint step of the coupled system solved as a single dense
/// nonlinear system with Newton and a finite-difference Jacobian.
struct NewtonStepInput {
    double tau = 0.0;
    double t_prev = 0.0;
    ComplexField u0, p0;    // full-node fields, zero on the boundary
    RealField varphi0, phi0;
    std::function<double(const Vec3&, double)> f_u_re, f_u_im, f_w;  // optional
};

struct NewtonStepOutput {
    ComplexField u, p;
    RealField varphi, phi;
    int iterations = 0;
    double residual_inf = 0.0;
};

inline NewtonStepOutput dense_newton_step(const TensorMesh& mesh,
                                          const NewtonStepInput& in) {
    const int nint = mesh.interior_count();
    const int nz = 6 * nint;
    const double tau = in.tau;
    const int npts = 3;  // exact for every polynomial integrand of the step

    const Dense Mfull = mass_dense(mesh, npts);
    const Dense Kfull = stiffness_dense(mesh, npts);
    const Dense M = interior_block(mesh, Mfull);
    const Dense K = interior_block(mesh, Kfull);

    auto restrict_ = [&](const RealField& f) {
        std::vector<double> v(nint);
        for (int i = 0; i < nint; ++i) v[i] = f[mesh.node_of_interior(i)];
        return v;
    };
    auto prolong = [&](const std::vector<double>& z, int block) {
        RealField f(mesh.node_count(), 0.0);
        for (int i = 0; i < nint; ++i)
            f[mesh.node_of_interior(i)] = z[block * nint + i];
        return f;
    };

    const std::vector<double> ur0 = restrict_(in.u0.re), ui0 = restrict_(in.u0.im);
    const std::vector<double> pr0 = restrict_(in.p0.re), pi0 = restrict_(in.p0.im);
    const std::vector<double> x0 = restrict_(in.varphi0), y0 = restrict_(in.phi0);

    const double t_half = in.t_prev + 0.5 * tau;
    std::vector<double> Lur(nint, 0.0), Lui(nint, 0.0), Lw(nint, 0.0);
    if (in.f_u_re)
        Lur = load(mesh, 5, [&](const Vec3& x) { return in.f_u_re(x, t_half); });
    if (in.f_u_im)
        Lui = load(mesh, 5, [&](const Vec3& x) { return in.f_u_im(x, t_half); });
    if (in.f_w)
        Lw = load(mesh, 5, [&](const Vec3& x) { return in.f_w(x, t_half); });

    auto matvec = [&](const Dense& A, const std::vector<double>& v) {
        std::vector<double> y(nint, 0.0);
        for (int i = 0; i < nint; ++i)
            for (int j = 0; j < nint; ++j) y[i] += A[i][j] * v[j];
        return y;
    };

    // Unknown layout: [ur ui pr pi x y], interior dofs each.
    auto residual = [&](const std::vector<double>& z) {
        ComplexField u_full{prolong(z, 0), prolong(z, 1)};
        RealField x_full = prolong(z, 4);
        RealField phibar(mesh.node_count());
        for (int i = 0; i < mesh.node_count(); ++i)
            phibar[i] = 0.5 * (x_full[i] + in.varphi0[i]);
        std::vector<double> Fre, Fim;
        nonlinear_u(mesh, npts, u_full, in.u0, phibar, Fre, Fim);
        const std::vector<double> S = nonlinear_sq(mesh, npts, u_full, in.u0);

        std::vector<double> R(nz, 0.0), w(nint);
        auto put = [&](int block, const std::vector<double>& v) {
            for (int i = 0; i < nint; ++i) R[block * nint + i] += v[i];
        };
        // (a) mean of p equals the time derivative of u, both components.
        for (int i = 0; i < nint; ++i)
            w[i] = (z[0 * nint + i] - ur0[i]) / tau -
                   0.5 * (z[2 * nint + i] + pr0[i]);
        put(0, matvec(M, w));
        for (int i = 0; i < nint; ++i)
            w[i] = (z[1 * nint + i] - ui0[i]) / tau -
                   0.5 * (z[3 * nint + i] + pi0[i]);
        put(1, matvec(M, w));
        // (b) field equation, both components.
        for (int i = 0; i < nint; ++i) w[i] = (z[2 * nint + i] - pr0[i]) / tau;
        put(2, matvec(M, w));
        for (int i = 0; i < nint; ++i) w[i] = 0.5 * (z[0 * nint + i] + ur0[i]);
        put(2, matvec(M, w));
        put(2, matvec(K, w));
        for (int i = 0; i < nint; ++i) R[2 * nint + i] += Fre[i] - Lur[i];
        for (int i = 0; i < nint; ++i) w[i] = (z[3 * nint + i] - pi0[i]) / tau;
        put(3, matvec(M, w));
        for (int i = 0; i < nint; ++i) w[i] = 0.5 * (z[1 * nint + i] + ui0[i]);
        put(3, matvec(M, w));
        put(3, matvec(K, w));
        for (int i = 0; i < nint; ++i) R[3 * nint + i] += Fim[i] - Lui[i];
        // (c) density rate against the potential gradient.
        for (int i = 0; i < nint; ++i) w[i] = (z[4 * nint + i] - x0[i]) / tau;
        put(4, matvec(M, w));
        for (int i = 0; i < nint; ++i) w[i] = 0.5 * (z[5 * nint + i] + y0[i]);
        put(4, matvec(K, w));
        // (d) potential rate fed by the density mean and the square term.
        for (int i = 0; i < nint; ++i)
            w[i] = (z[5 * nint + i] - y0[i]) / tau - 0.5 * (z[4 * nint + i] + x0[i]);
        put(5, matvec(M, w));
        for (int i = 0; i < nint; ++i) R[5 * nint + i] -= S[i] + Lw[i];
        return R;
    };

    std::vector<double> z(nz, 0.0);
    for (int i = 0; i < nint; ++i) {
        z[0 * nint + i] = ur0[i];
        z[1 * nint + i] = ui0[i];
        z[2 * nint + i] = pr0[i];
        z[3 * nint + i] = pi0[i];
        z[4 * nint + i] = x0[i];
        z[5 * nint + i] = y0[i];
    }

    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    std::vector<double> R = residual(z);
    const double target = 1e-13 * (1.0 + inf_norm(R));
    NewtonStepOutput out;
    for (int it = 1; it <= 30; ++it) {
        if (inf_norm(R) <= target) break;
        Dense J(nz, std::vector<double>(nz, 0.0));
        for (int k = 0; k < nz; ++k) {
            const double eps = 1e-7 * (1.0 + std::abs(z[k]));
            std::vector<double> zp = z, zm = z;
            zp[k] += eps;
            zm[k] -= eps;
            const std::vector<double> Rp = residual(zp), Rm = residual(zm);
            for (int i = 0; i < nz; ++i) J[i][k] = (Rp[i] - Rm[i]) / (2.0 * eps);
        }
        std::vector<double> rhs(nz);
        for (int i = 0; i < nz; ++i) rhs[i] = -R[i];
        const std::vector<double> dz = lu_solve(std::move(J), std::move(rhs));
        for (int i = 0; i < nz; ++i) z[i] += dz[i];
        R = residual(z);
        out.iterations = it;
    }
    out.residual_inf = inf_norm(R);
    if (out.residual_inf > target)
        throw std::runtime_error("oracle::dense_newton_step: no convergence");

    out.u = {prolong(z, 0), prolong(z, 1)};
    out.p = {prolong(z, 2), prolong(z, 3)};
    out.varphi = prolong(z, 4);
    out.phi = prolong(z, 5);
    return out;
}

}  // namespace oracle
