/// @file assembly.hpp
/// @brief Global operators and load vectors for the Q1 space.
///
/// All elements of a tensor mesh are congruent, so local matrices and
/// shape tables are computed once per (mesh, rule) pair and scattered.
/// Matrices and vectors are indexed by interior dof unless a full node
/// set is requested explicitly.
#pragma once

#include <functional>
#include <vector>

#include "kgz/fields.hpp"
#include "kgz/mesh.hpp"
#include "kgz/quadrature.hpp"
#include "kgz/sparse.hpp"

namespace kgz {

enum class DofSet { Interior, AllNodes };

/// Shape values, physical gradients and weighted Jacobians at the points
/// of a rule, valid for every element of the mesh.
struct ElementTables {
    int dim = 0, nq = 0, nb = 0;
    std::vector<double> N;   // nq*nb
    std::vector<double> dN;  // (nq*nb)*3, physical gradient components
    std::vector<double> wJ;  // nq

    static ElementTables make(const TensorMesh& mesh, const QuadratureRule& rule);

    double shape(int q, int a) const { return N[q * nb + a]; }
    const double* shape_grad(int q, int a) const { return &dN[(q * nb + a) * 3]; }
};

SparseMatrix assemble_mass(const TensorMesh& mesh, const QuadratureRule& rule,
                           DofSet set = DofSet::Interior);
SparseMatrix assemble_stiffness(const TensorMesh& mesh, const QuadratureRule& rule,
                                DofSet set = DofSet::Interior);

/// Entries (f, l_j) over interior test functions.
std::vector<double> load_vector(const TensorMesh& mesh, const QuadratureRule& rule,
                                const std::function<double(const Vec3&)>& f);

/// Entries (g, grad l_j) over interior test functions; g is a vector
/// field, typically the analytic gradient of a projection target.
std::vector<double> gradient_load_vector(
    const TensorMesh& mesh, const QuadratureRule& rule,
    const std::function<Vec3(const Vec3&)>& g);

struct ComplexVec {
    std::vector<double> re, im;
};

/// Entries ( (phi_avg + (|u_new|^2+|u_old|^2)/2) * (u_new+u_old)/2, l_j )
/// over interior test functions, with every factor read from its Q1
/// interpolant. This is the nonlinear block of the field half-step.
ComplexVec nonlinear_u_vector(const TensorMesh& mesh, const QuadratureRule& rule,
                              const ComplexField& u_new, const ComplexField& u_old,
                              const RealField& phi_avg);

/// Entries ( (|u_new|^2+|u_old|^2)/2, l_j ) over interior test functions.
std::vector<double> nonlinear_sq_vector(const TensorMesh& mesh,
                                        const QuadratureRule& rule,
                                        const ComplexField& u_new,
                                        const ComplexField& u_old);

}  // namespace kgz
