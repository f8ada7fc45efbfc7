/// @file fields.hpp
/// @brief Nodal coefficient vectors and helpers for moving between the
///        full node set and the interior unknowns.
#pragma once

#include <vector>

#include "kgz/mesh.hpp"

namespace kgz {

/// Coefficients over every mesh node; homogeneous Dirichlet fields keep
/// exact zeros on boundary nodes.
using RealField = std::vector<double>;

struct ComplexField {
    RealField re, im;
};

inline RealField zero_field(const TensorMesh& mesh) {
    return RealField(mesh.node_count(), 0.0);
}
inline ComplexField zero_complex_field(const TensorMesh& mesh) {
    return {zero_field(mesh), zero_field(mesh)};
}

/// Extracts the interior entries in interior-dof order.
inline std::vector<double> restrict_interior(const TensorMesh& mesh,
                                             const RealField& f) {
    std::vector<double> v(mesh.interior_count());
    for (int i = 0; i < mesh.interior_count(); ++i) v[i] = f[mesh.node_of_interior(i)];
    return v;
}

/// Scatters interior values to a full field with zero boundary.
inline RealField prolong_interior(const TensorMesh& mesh,
                                  const std::vector<double>& v) {
    RealField f(mesh.node_count(), 0.0);
    for (int i = 0; i < mesh.interior_count(); ++i) f[mesh.node_of_interior(i)] = v[i];
    return f;
}

}  // namespace kgz
