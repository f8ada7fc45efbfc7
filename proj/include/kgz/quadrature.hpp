/// @file quadrature.hpp
/// @brief Tensor-product Gauss-Legendre rules and Q1/Q2 shape functions
///        on the reference cube [-1,1]^dim.
#pragma once

#include <vector>

#include "kgz/types.hpp"

namespace kgz {

struct QuadratureRule {
    int dim = 0;
    int points_per_axis = 0;
    std::vector<Vec3> points;    // unused trailing coordinates are 0
    std::vector<double> weights;
    int size() const { return static_cast<int>(weights.size()); }
};

/// n-point Gauss-Legendre rule per axis, tensorized over dim axes.
/// Exact for polynomials of degree 2n-1 in each variable. 1 <= n <= 6.
QuadratureRule gauss_rule(int points_per_axis, int dim);

/// Shape values and reference gradients at one reference point.
/// Basis functions are ordered lexicographically (x index fastest),
/// matching TensorMesh::element_nodes for Q1 and MacroPatchSet node
/// lists for Q2.
struct ShapeValues {
    int count = 0;
    std::array<double, 27> value{};
    std::array<Vec3, 27> grad{};  // with respect to reference coordinates
};

/// Multilinear (2^dim corner) basis.
ShapeValues q1_shapes(const Vec3& ref, int dim);

/// Triquadratic Lagrange basis on the 3^dim lattice {-1,0,1}^dim.
ShapeValues q2_shapes(const Vec3& ref, int dim);

}  // namespace kgz
