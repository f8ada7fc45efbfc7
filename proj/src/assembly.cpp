#include "kgz/assembly.hpp"

#include <array>

namespace kgz {
namespace {

/// CSR pattern over the 3^dim node stencil of a tensor mesh.
SparseMatrix make_stencil_matrix(const TensorMesh& mesh, DofSet set) {
    const int dim = mesh.dim();
    const bool interior = (set == DofSet::Interior);
    const int n = interior ? mesh.interior_count() : mesh.node_count();

    std::vector<int> row_ptr(n + 1, 0);
    std::vector<int> cols;
    cols.reserve(static_cast<size_t>(n) * (dim == 2 ? 9 : 27));

    auto dof_of = [&](int node) {
        return interior ? mesh.interior_of(node) : node;
    };

    const int kzlo = (dim == 3) ? -1 : 0, kzhi = (dim == 3) ? 1 : 0;
    for (int row = 0; row < n; ++row) {
        const int node = interior ? mesh.node_of_interior(row) : row;
        const GridIndex g = mesh.node_coords(node);
        for (int dz = kzlo; dz <= kzhi; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const GridIndex ng{g.i + dx, g.j + dy, g.k + dz};
                    bool inside = true;
                    for (int d = 0; d < dim; ++d)
                        if (ng[d] < 0 || ng[d] > mesh.subdiv(d)) inside = false;
                    if (!inside) continue;
                    const int col = dof_of(mesh.node_index(ng));
                    if (col >= 0) cols.push_back(col);
                }
        row_ptr[row + 1] = static_cast<int>(cols.size());
    }
    return SparseMatrix(n, std::move(row_ptr), std::move(cols));
}

/// Scatters one precomputed local matrix over every element.
void scatter_local(const TensorMesh& mesh, DofSet set,
                   const std::array<double, 64>& local, SparseMatrix& A) {
    const int nb = mesh.corners_per_element();
    const bool interior = (set == DofSet::Interior);
    int nodes[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        for (int a = 0; a < nb; ++a) {
            const int row = interior ? mesh.interior_of(nodes[a]) : nodes[a];
            if (row < 0) continue;
            for (int b = 0; b < nb; ++b) {
                const int col = interior ? mesh.interior_of(nodes[b]) : nodes[b];
                if (col < 0) continue;
                A.add(row, col, local[a * 8 + b]);
            }
        }
    }
}

void gather(const RealField& f, const int* nodes, int nb, double* out) {
    for (int a = 0; a < nb; ++a) out[a] = f[nodes[a]];
}

}  // namespace

ElementTables ElementTables::make(const TensorMesh& mesh, const QuadratureRule& rule) {
    if (rule.dim != mesh.dim())
        throw InvalidArgument("element tables: rule and mesh dimension differ");
    ElementTables t;
    t.dim = mesh.dim();
    t.nq = rule.size();
    t.nb = mesh.corners_per_element();
    t.N.resize(static_cast<size_t>(t.nq) * t.nb);
    t.dN.assign(static_cast<size_t>(t.nq) * t.nb * 3, 0.0);
    t.wJ.resize(t.nq);

    double jac = 1.0;
    for (int d = 0; d < t.dim; ++d) jac *= 0.5 * mesh.h(d);
    for (int q = 0; q < t.nq; ++q) {
        const ShapeValues s = q1_shapes(rule.points[q], t.dim);
        t.wJ[q] = rule.weights[q] * jac;
        for (int a = 0; a < t.nb; ++a) {
            t.N[q * t.nb + a] = s.value[a];
            for (int d = 0; d < t.dim; ++d)
                t.dN[(q * t.nb + a) * 3 + d] = s.grad[a][d] * 2.0 / mesh.h(d);
        }
    }
    return t;
}

SparseMatrix assemble_mass(const TensorMesh& mesh, const QuadratureRule& rule,
                           DofSet set) {
    const ElementTables t = ElementTables::make(mesh, rule);
    std::array<double, 64> local{};
    for (int a = 0; a < t.nb; ++a)
        for (int b = 0; b < t.nb; ++b) {
            double s = 0.0;
            for (int q = 0; q < t.nq; ++q) s += t.wJ[q] * t.shape(q, a) * t.shape(q, b);
            local[a * 8 + b] = s;
        }
    SparseMatrix A = make_stencil_matrix(mesh, set);
    scatter_local(mesh, set, local, A);
    return A;
}

SparseMatrix assemble_stiffness(const TensorMesh& mesh, const QuadratureRule& rule,
                                DofSet set) {
    const ElementTables t = ElementTables::make(mesh, rule);
    std::array<double, 64> local{};
    for (int a = 0; a < t.nb; ++a)
        for (int b = 0; b < t.nb; ++b) {
            double s = 0.0;
            for (int q = 0; q < t.nq; ++q) {
                const double* ga = t.shape_grad(q, a);
                const double* gb = t.shape_grad(q, b);
                s += t.wJ[q] * (ga[0] * gb[0] + ga[1] * gb[1] + ga[2] * gb[2]);
            }
            local[a * 8 + b] = s;
        }
    SparseMatrix A = make_stencil_matrix(mesh, set);
    scatter_local(mesh, set, local, A);
    return A;
}

std::vector<double> load_vector(const TensorMesh& mesh, const QuadratureRule& rule,
                                const std::function<double(const Vec3&)>& f) {
    const ElementTables t = ElementTables::make(mesh, rule);
    std::vector<double> out(mesh.interior_count(), 0.0);
    int nodes[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        const Vec3 base = mesh.element_base(e);
        for (int q = 0; q < t.nq; ++q) {
            Vec3 x = base;
            for (int d = 0; d < t.dim; ++d)
                x[d] += 0.5 * (rule.points[q][d] + 1.0) * mesh.h(d);
            const double wf = t.wJ[q] * f(x);
            for (int a = 0; a < t.nb; ++a) {
                const int dof = mesh.interior_of(nodes[a]);
                if (dof >= 0) out[dof] += wf * t.shape(q, a);
            }
        }
    }
    return out;
}

std::vector<double> gradient_load_vector(
    const TensorMesh& mesh, const QuadratureRule& rule,
    const std::function<Vec3(const Vec3&)>& g) {
    const ElementTables t = ElementTables::make(mesh, rule);
    std::vector<double> out(mesh.interior_count(), 0.0);
    int nodes[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        const Vec3 base = mesh.element_base(e);
        for (int q = 0; q < t.nq; ++q) {
            Vec3 x = base;
            for (int d = 0; d < t.dim; ++d)
                x[d] += 0.5 * (rule.points[q][d] + 1.0) * mesh.h(d);
            const Vec3 gv = g(x);
            for (int a = 0; a < t.nb; ++a) {
                const int dof = mesh.interior_of(nodes[a]);
                if (dof < 0) continue;
                const double* ga = t.shape_grad(q, a);
                out[dof] += t.wJ[q] * (gv[0] * ga[0] + gv[1] * ga[1] + gv[2] * ga[2]);
            }
        }
    }
    return out;
}

ComplexVec nonlinear_u_vector(const TensorMesh& mesh, const QuadratureRule& rule,
                              const ComplexField& u_new, const ComplexField& u_old,
                              const RealField& phi_avg) {
    const ElementTables t = ElementTables::make(mesh, rule);
    ComplexVec out;
    out.re.assign(mesh.interior_count(), 0.0);
    out.im.assign(mesh.interior_count(), 0.0);
    int nodes[8];
    double nr[8], ni[8], or_[8], oi[8], ph[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        gather(u_new.re, nodes, t.nb, nr);
        gather(u_new.im, nodes, t.nb, ni);
        gather(u_old.re, nodes, t.nb, or_);
        gather(u_old.im, nodes, t.nb, oi);
        gather(phi_avg, nodes, t.nb, ph);
        for (int q = 0; q < t.nq; ++q) {
            double unr = 0, uni = 0, uor = 0, uoi = 0, phq = 0;
            for (int a = 0; a < t.nb; ++a) {
                const double N = t.shape(q, a);
                unr += N * nr[a];
                uni += N * ni[a];
                uor += N * or_[a];
                uoi += N * oi[a];
                phq += N * ph[a];
            }
            const double w =
                phq + 0.5 * (unr * unr + uni * uni + uor * uor + uoi * uoi);
            const double cr = t.wJ[q] * w * 0.5 * (unr + uor);
            const double ci = t.wJ[q] * w * 0.5 * (uni + uoi);
            for (int a = 0; a < t.nb; ++a) {
                const int dof = mesh.interior_of(nodes[a]);
                if (dof < 0) continue;
                const double N = t.shape(q, a);
                out.re[dof] += cr * N;
                out.im[dof] += ci * N;
            }
        }
    }
    return out;
}

std::vector<double> nonlinear_sq_vector(const TensorMesh& mesh,
                                        const QuadratureRule& rule,
                                        const ComplexField& u_new,
                                        const ComplexField& u_old) {
    const ElementTables t = ElementTables::make(mesh, rule);
    std::vector<double> out(mesh.interior_count(), 0.0);
    int nodes[8];
    double nr[8], ni[8], or_[8], oi[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        gather(u_new.re, nodes, t.nb, nr);
        gather(u_new.im, nodes, t.nb, ni);
        gather(u_old.re, nodes, t.nb, or_);
        gather(u_old.im, nodes, t.nb, oi);
        for (int q = 0; q < t.nq; ++q) {
            double unr = 0, uni = 0, uor = 0, uoi = 0;
            for (int a = 0; a < t.nb; ++a) {
                const double N = t.shape(q, a);
                unr += N * nr[a];
                uni += N * ni[a];
                uor += N * or_[a];
                uoi += N * oi[a];
            }
            const double s =
                t.wJ[q] * 0.5 * (unr * unr + uni * uni + uor * uor + uoi * uoi);
            for (int a = 0; a < t.nb; ++a) {
                const int dof = mesh.interior_of(nodes[a]);
                if (dof >= 0) out[dof] += s * t.shape(q, a);
            }
        }
    }
    return out;
}

}  // namespace kgz
