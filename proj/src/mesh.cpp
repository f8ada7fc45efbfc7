#include "kgz/mesh.hpp"

#include <string>

namespace kgz {

TensorMesh::TensorMesh(int dim, const Vec3& origin, const Vec3& extent,
                       const std::array<int, 3>& subdivisions)
    : dim_(dim), origin_(origin), extent_(extent), m_(subdivisions) {
    if (dim != 2 && dim != 3)
        throw InvalidArgument("mesh: dim must be 2 or 3, got " + std::to_string(dim));
    for (int d = dim; d < 3; ++d) {
        m_[d] = 1;  // flattened axis: one node layer
        extent_[d] = 0.0;
        origin_[d] = 0.0;
    }
    for (int d = 0; d < dim; ++d) {
        if (extent_[d] <= 0.0)
            throw InvalidArgument("mesh: extent along axis " + std::to_string(d) +
                                  " must be positive");
        if (m_[d] < 2)
            throw InvalidArgument("mesh: need at least 2 subdivisions along axis " +
                                  std::to_string(d) + ", got " + std::to_string(m_[d]));
    }
    for (int d = 0; d < 3; ++d) h_[d] = (d < dim) ? extent_[d] / m_[d] : 0.0;

    const int nz_nodes = (dim == 3) ? m_[2] + 1 : 1;
    node_count_ = (m_[0] + 1) * (m_[1] + 1) * nz_nodes;
    element_count_ = m_[0] * m_[1] * (dim == 3 ? m_[2] : 1);

    interior_of_.assign(node_count_, -1);
    interior_count_ = 0;
    for (int n = 0; n < node_count_; ++n) {
        if (!is_boundary(n)) interior_of_[n] = interior_count_++;
    }
    node_of_interior_.resize(interior_count_);
    for (int n = 0; n < node_count_; ++n)
        if (interior_of_[n] >= 0) node_of_interior_[interior_of_[n]] = n;
}

Vec3 TensorMesh::node_position(int node) const {
    const GridIndex g = node_coords(node);
    Vec3 x = origin_;
    for (int d = 0; d < dim_; ++d) x[d] += h_[d] * g[d];
    return x;
}

bool TensorMesh::is_boundary(int node) const {
    const GridIndex g = node_coords(node);
    for (int d = 0; d < dim_; ++d)
        if (g[d] == 0 || g[d] == m_[d]) return true;
    return false;
}

Vec3 TensorMesh::element_base(int elem) const {
    const GridIndex g = element_coords(elem);
    Vec3 x = origin_;
    for (int d = 0; d < dim_; ++d) x[d] += h_[d] * g[d];
    return x;
}

void TensorMesh::element_nodes(int elem, int out[8]) const {
    const GridIndex g = element_coords(elem);
    const int nc = corners_per_element();
    for (int c = 0; c < nc; ++c) {
        GridIndex n{g.i + (c & 1), g.j + ((c >> 1) & 1), g.k + ((c >> 2) & 1)};
        out[c] = node_index(n);
    }
}

MacroPatchSet::MacroPatchSet(const TensorMesh& mesh) {
    const int dim = mesh.dim();
    std::array<int, 3> np{};
    for (int d = 0; d < dim; ++d) {
        if (mesh.subdiv(d) % 2 != 0)
            throw InvalidArgument(
                "macro patches need an even subdivision count per axis, got " +
                std::to_string(mesh.subdiv(d)) + " along axis " + std::to_string(d));
        np[d] = mesh.subdiv(d) / 2;
    }
    for (int d = dim; d < 3; ++d) np[d] = 1;

    patch_count_ = np[0] * np[1] * np[2];
    nodes_per_patch_ = (dim == 2) ? 9 : 27;
    elements_per_patch_ = 1 << dim;

    nodes_.resize(static_cast<size_t>(patch_count_) * nodes_per_patch_);
    elems_.resize(static_cast<size_t>(patch_count_) * elements_per_patch_);
    patch_of_elem_.assign(mesh.element_count(), -1);

    const int zmax = (dim == 3) ? np[2] : 1;
    int patch = 0;
    for (int pz = 0; pz < zmax; ++pz)
        for (int py = 0; py < np[1]; ++py)
            for (int px = 0; px < np[0]; ++px, ++patch) {
                int* pn = nodes_.data() + static_cast<size_t>(patch) * nodes_per_patch_;
                const int czmax = (dim == 3) ? 3 : 1;
                int s = 0;
                for (int cz = 0; cz < czmax; ++cz)
                    for (int cy = 0; cy < 3; ++cy)
                        for (int cx = 0; cx < 3; ++cx, ++s)
                            pn[s] = mesh.node_index(
                                {2 * px + cx, 2 * py + cy, 2 * pz + cz});

                int* pe = elems_.data() + static_cast<size_t>(patch) * elements_per_patch_;
                const int ezmax = (dim == 3) ? 2 : 1;
                s = 0;
                for (int ez = 0; ez < ezmax; ++ez)
                    for (int ey = 0; ey < 2; ++ey)
                        for (int ex = 0; ex < 2; ++ex, ++s) {
                            const int e = mesh.element_index(
                                {2 * px + ex, 2 * py + ey, 2 * pz + ez});
                            pe[s] = e;
                            patch_of_elem_[e] = patch;
                        }
            }
}

}  // namespace kgz
