/// @file analysis.hpp
/// @brief Discrete energy, nodal interpolation, error norms against
///        analytic fields, and the macroelement quadratic postprocess.
#pragma once

#include <functional>
#include <string>

#include "kgz/fields.hpp"
#include "kgz/functions.hpp"
#include "kgz/mesh.hpp"
#include "kgz/quadrature.hpp"

namespace kgz {

/// Current level of the time stepper. phi is the auxiliary potential,
/// varphi the density deviation; boundary nodes hold exact zeros.
struct StepState {
    ComplexField u, p;
    RealField varphi, phi;
    double time = 0.0;
};

/// The conserved functional split into its seven parts; total is their
/// sum in a fixed order. All integrals use the rule that is passed in,
/// which must be the time stepper's own rule for the conservation
/// identity to hold exactly.
struct EnergyBreakdown {
    double grad_u = 0, l2_u = 0, l2_p = 0;
    double half_l2_varphi = 0, half_grad_phi = 0, half_l4_u = 0, cross = 0;
    double total = 0;
};

EnergyBreakdown energy(const TensorMesh& mesh, const QuadratureRule& rule,
                       const StepState& state);

/// Nodal interpolant; boundary nodes are set to exact zero.
RealField interpolate(const TensorMesh& mesh,
                      const std::function<double(const Vec3&)>& g);

enum class NormKind { L2, H1Semi, H1, L4 };
NormKind parse_norm_kind(const std::string& tag);

/// || f_h - g || in the requested norm, integrated with a Gauss rule of
/// quad_points per axis (analytic-integrand default 5). Pass a zero g to
/// take plain norms of the discrete field.
double error_norm(const TensorMesh& mesh, const RealField& fh, const ScalarFunc& g,
                  NormKind kind, int quad_points = 5);

/// Complex variant; component errors combine as |e|^2 = e_re^2 + e_im^2
/// pointwise (the L4 kind integrates |e|^4 of the combined modulus).
double error_norm(const TensorMesh& mesh, const ComplexField& fh,
                  const ScalarFunc& g_re, const ScalarFunc& g_im, NormKind kind,
                  int quad_points = 5);

/// Piecewise-quadratic interpolant of nodal values over 2x2(x2) element
/// patches. Matches the nodal data at all 3^dim patch nodes and is
/// evaluable, with gradient, anywhere inside a patch.
class PatchField {
  public:
    PatchField(const TensorMesh& mesh, const MacroPatchSet& patches,
               const RealField& nodal);

    /// Value at a reference point of an element (element-local coords).
    double value(int elem, const Vec3& ref) const;
    /// Physical gradient at a reference point of an element.
    Vec3 grad(int elem, const Vec3& ref) const;

  private:
    Vec3 patch_ref(int elem, const Vec3& ref) const;
    const TensorMesh& mesh_;
    const MacroPatchSet& patches_;
    std::vector<double> coeff_;  // patch-major nodal values
};

/// || I2h f_h - g || where I2h is the patch quadratic interpolant.
double postprocessed_error_norm(const TensorMesh& mesh, const MacroPatchSet& patches,
                                const RealField& fh, const ScalarFunc& g,
                                NormKind kind, int quad_points = 5);
double postprocessed_error_norm(const TensorMesh& mesh, const MacroPatchSet& patches,
                                const ComplexField& fh, const ScalarFunc& g_re,
                                const ScalarFunc& g_im, NormKind kind,
                                int quad_points = 5);

}  // namespace kgz
