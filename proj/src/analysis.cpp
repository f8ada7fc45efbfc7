#include "kgz/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "kgz/assembly.hpp"

namespace kgz {
namespace {

Vec3 physical_point(const TensorMesh& mesh, int elem, const Vec3& ref) {
    Vec3 x = mesh.element_base(elem);
    for (int d = 0; d < mesh.dim(); ++d) x[d] += 0.5 * (ref[d] + 1.0) * mesh.h(d);
    return x;
}

/// Q1 field evaluation at a reference point of one element.
struct Q1Eval {
    const TensorMesh& mesh;
    const RealField& f;

    double value(int elem, const Vec3& ref) const {
        int nodes[8];
        mesh.element_nodes(elem, nodes);
        const ShapeValues s = q1_shapes(ref, mesh.dim());
        double v = 0.0;
        for (int a = 0; a < s.count; ++a) v += s.value[a] * f[nodes[a]];
        return v;
    }
    Vec3 grad(int elem, const Vec3& ref) const {
        int nodes[8];
        mesh.element_nodes(elem, nodes);
        const ShapeValues s = q1_shapes(ref, mesh.dim());
        Vec3 g{};
        for (int a = 0; a < s.count; ++a)
            for (int d = 0; d < mesh.dim(); ++d)
                g[d] += s.grad[a][d] * 2.0 / mesh.h(d) * f[nodes[a]];
        return g;
    }
};

struct PatchEval {
    const PatchField& f;
    double value(int elem, const Vec3& ref) const { return f.value(elem, ref); }
    Vec3 grad(int elem, const Vec3& ref) const { return f.grad(elem, ref); }
};

/// Integrates the requested norm of (f - g), combining real and
/// imaginary parts when both are present.
template <class E>
double combined_norm(const TensorMesh& mesh, const E& fre, const E* fim,
                     const ScalarFunc& gre, const ScalarFunc* gim, NormKind kind,
                     int quad_points) {
    const QuadratureRule rule = gauss_rule(quad_points, mesh.dim());
    double jac = 1.0;
    for (int d = 0; d < mesh.dim(); ++d) jac *= 0.5 * mesh.h(d);

    double acc = 0.0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        for (int q = 0; q < rule.size(); ++q) {
            const Vec3& ref = rule.points[q];
            const Vec3 x = physical_point(mesh, e, ref);
            const double w = rule.weights[q] * jac;

            double err2 = 0.0, gerr2 = 0.0;
            {
                const double ev = fre.value(e, ref) - gre.value(x);
                err2 += ev * ev;
                if (kind == NormKind::H1Semi || kind == NormKind::H1) {
                    const Vec3 gh = fre.grad(e, ref), gx = gre.grad(x);
                    for (int d = 0; d < mesh.dim(); ++d) {
                        const double gd = gh[d] - gx[d];
                        gerr2 += gd * gd;
                    }
                }
            }
            if (fim) {
                const double ev = fim->value(e, ref) - gim->value(x);
                err2 += ev * ev;
                if (kind == NormKind::H1Semi || kind == NormKind::H1) {
                    const Vec3 gh = fim->grad(e, ref), gx = gim->grad(x);
                    for (int d = 0; d < mesh.dim(); ++d) {
                        const double gd = gh[d] - gx[d];
                        gerr2 += gd * gd;
                    }
                }
            }
            switch (kind) {
                case NormKind::L2: acc += w * err2; break;
                case NormKind::H1Semi: acc += w * gerr2; break;
                case NormKind::H1: acc += w * (err2 + gerr2); break;
                case NormKind::L4: acc += w * err2 * err2; break;
            }
        }
    }
    return kind == NormKind::L4 ? std::pow(acc, 0.25) : std::sqrt(acc);
}

}  // namespace

EnergyBreakdown energy(const TensorMesh& mesh, const QuadratureRule& rule,
                       const StepState& state) {
    const ElementTables t = ElementTables::make(mesh, rule);
    const int dim = mesh.dim();
    EnergyBreakdown E;
    int nodes[8];
    double ur[8], ui[8], pr[8], pi_[8], vp[8], ph[8];
    for (int e = 0; e < mesh.element_count(); ++e) {
        mesh.element_nodes(e, nodes);
        for (int a = 0; a < t.nb; ++a) {
            ur[a] = state.u.re[nodes[a]];
            ui[a] = state.u.im[nodes[a]];
            pr[a] = state.p.re[nodes[a]];
            pi_[a] = state.p.im[nodes[a]];
            vp[a] = state.varphi[nodes[a]];
            ph[a] = state.phi[nodes[a]];
        }
        for (int q = 0; q < t.nq; ++q) {
            double vur = 0, vui = 0, vpr = 0, vpi = 0, vvp = 0;
            Vec3 gur{}, gui{}, gph{};
            for (int a = 0; a < t.nb; ++a) {
                const double N = t.shape(q, a);
                vur += N * ur[a];
                vui += N * ui[a];
                vpr += N * pr[a];
                vpi += N * pi_[a];
                vvp += N * vp[a];
                const double* g = t.shape_grad(q, a);
                for (int d = 0; d < dim; ++d) {
                    gur[d] += g[d] * ur[a];
                    gui[d] += g[d] * ui[a];
                    gph[d] += g[d] * ph[a];
                }
            }
            const double w = t.wJ[q];
            double gu2 = 0, gp2 = 0;
            for (int d = 0; d < dim; ++d) {
                gu2 += gur[d] * gur[d] + gui[d] * gui[d];
                gp2 += gph[d] * gph[d];
            }
            const double u2 = vur * vur + vui * vui;
            E.grad_u += w * gu2;
            E.l2_u += w * u2;
            E.l2_p += w * (vpr * vpr + vpi * vpi);
            E.half_l2_varphi += 0.5 * w * vvp * vvp;
            E.half_grad_phi += 0.5 * w * gp2;
            E.half_l4_u += 0.5 * w * u2 * u2;
            E.cross += w * vvp * u2;
        }
    }
    E.total = E.grad_u + E.l2_u + E.l2_p + E.half_l2_varphi + E.half_grad_phi +
              E.half_l4_u + E.cross;
    return E;
}

RealField interpolate(const TensorMesh& mesh,
                      const std::function<double(const Vec3&)>& g) {
    RealField f(mesh.node_count(), 0.0);
    for (int n = 0; n < mesh.node_count(); ++n) {
        if (mesh.is_boundary(n)) continue;
        f[n] = g(mesh.node_position(n));
    }
    return f;
}

NormKind parse_norm_kind(const std::string& tag) {
    std::string t;
    for (char c : tag) t.push_back(static_cast<char>(std::tolower(c)));
    if (t == "l2") return NormKind::L2;
    if (t == "h1semi") return NormKind::H1Semi;
    if (t == "h1") return NormKind::H1;
    if (t == "l4") return NormKind::L4;
    throw InvalidArgument("unknown norm '" + tag + "'; use l2, h1semi, h1 or l4");
}

double error_norm(const TensorMesh& mesh, const RealField& fh, const ScalarFunc& g,
                  NormKind kind, int quad_points) {
    Q1Eval ev{mesh, fh};
    return combined_norm(mesh, ev, static_cast<const Q1Eval*>(nullptr), g, nullptr,
                         kind, quad_points);
}

double error_norm(const TensorMesh& mesh, const ComplexField& fh,
                  const ScalarFunc& g_re, const ScalarFunc& g_im, NormKind kind,
                  int quad_points) {
    Q1Eval evr{mesh, fh.re}, evi{mesh, fh.im};
    return combined_norm(mesh, evr, &evi, g_re, &g_im, kind, quad_points);
}

PatchField::PatchField(const TensorMesh& mesh, const MacroPatchSet& patches,
                       const RealField& nodal)
    : mesh_(mesh), patches_(patches) {
    const int npp = patches.nodes_per_patch();
    coeff_.resize(static_cast<size_t>(patches.patch_count()) * npp);
    for (int p = 0; p < patches.patch_count(); ++p) {
        const int* pn = patches.patch_nodes(p);
        for (int a = 0; a < npp; ++a) coeff_[static_cast<size_t>(p) * npp + a] = nodal[pn[a]];
    }
}

Vec3 PatchField::patch_ref(int elem, const Vec3& ref) const {
    const GridIndex g = mesh_.element_coords(elem);
    Vec3 s{};
    for (int d = 0; d < mesh_.dim(); ++d) {
        const int half = g[d] % 2;
        s[d] = half ? 0.5 * (ref[d] + 1.0) : 0.5 * (ref[d] - 1.0);
    }
    return s;
}

double PatchField::value(int elem, const Vec3& ref) const {
    const int p = patches_.patch_of_element(elem);
    const ShapeValues s = q2_shapes(patch_ref(elem, ref), mesh_.dim());
    const double* c = coeff_.data() + static_cast<size_t>(p) * patches_.nodes_per_patch();
    double v = 0.0;
    for (int a = 0; a < s.count; ++a) v += s.value[a] * c[a];
    return v;
}

Vec3 PatchField::grad(int elem, const Vec3& ref) const {
    const int p = patches_.patch_of_element(elem);
    const ShapeValues s = q2_shapes(patch_ref(elem, ref), mesh_.dim());
    const double* c = coeff_.data() + static_cast<size_t>(p) * patches_.nodes_per_patch();
    Vec3 g{};
    for (int a = 0; a < s.count; ++a)
        for (int d = 0; d < mesh_.dim(); ++d)
            g[d] += s.grad[a][d] / mesh_.h(d) * c[a];  // patch half-width is h
    return g;
}

double postprocessed_error_norm(const TensorMesh& mesh, const MacroPatchSet& patches,
                                const RealField& fh, const ScalarFunc& g,
                                NormKind kind, int quad_points) {
    PatchField pf(mesh, patches, fh);
    PatchEval ev{pf};
    return combined_norm(mesh, ev, static_cast<const PatchEval*>(nullptr), g, nullptr,
                         kind, quad_points);
}

double postprocessed_error_norm(const TensorMesh& mesh, const MacroPatchSet& patches,
                                const ComplexField& fh, const ScalarFunc& g_re,
                                const ScalarFunc& g_im, NormKind kind,
                                int quad_points) {
    PatchField pr(mesh, patches, fh.re), pi_(mesh, patches, fh.im);
    PatchEval evr{pr}, evi{pi_};
    return combined_norm(mesh, evr, &evi, g_re, &g_im, kind, quad_points);
}

}  // namespace kgz
