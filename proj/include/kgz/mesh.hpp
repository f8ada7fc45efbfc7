/// @file mesh.hpp
/// @brief Structured tensor-product meshes on axis-aligned boxes.
///
/// Nodes and elements are numbered lexicographically with the x index
/// running fastest. Element corner lists follow the same convention:
/// corner c of an element has offset bit d of c along axis d, so in 2D
/// the corners come out as (0,0), (1,0), (0,1), (1,1).
#pragma once

#include <array>
#include <vector>

#include "kgz/types.hpp"

namespace kgz {

struct GridIndex {
    int i = 0, j = 0, k = 0;
    int operator[](int axis) const { return axis == 0 ? i : (axis == 1 ? j : k); }
};

class TensorMesh {
  public:
    /// Uniform subdivision of the box [origin, origin+extent] into
    /// subdivisions[d] cells per axis. dim must be 2 or 3, every used
    /// extent positive, every used subdivision at least 2.
    TensorMesh(int dim, const Vec3& origin, const Vec3& extent,
               const std::array<int, 3>& subdivisions);

    int dim() const { return dim_; }
    const Vec3& origin() const { return origin_; }
    const Vec3& extent() const { return extent_; }

    /// Cell width along one axis.
    double h(int axis) const { return h_[axis]; }
    int subdiv(int axis) const { return m_[axis]; }
    int nodes_along(int axis) const { return m_[axis] + 1; }

    int node_count() const { return node_count_; }
    int element_count() const { return element_count_; }
    int interior_count() const { return interior_count_; }
    int corners_per_element() const { return 1 << dim_; }

    int node_index(const GridIndex& g) const {
        return g.i + (m_[0] + 1) * (g.j + (m_[1] + 1) * g.k);
    }
    GridIndex node_coords(int node) const {
        const int nx = m_[0] + 1, ny = m_[1] + 1;
        return {node % nx, (node / nx) % ny, node / (nx * ny)};
    }
    Vec3 node_position(int node) const;

    /// True when any grid index sits on the box surface.
    bool is_boundary(int node) const;

    /// Interior dof id for a node, or -1 on the boundary.
    int interior_of(int node) const { return interior_of_[node]; }
    int node_of_interior(int dof) const { return node_of_interior_[dof]; }

    int element_index(const GridIndex& g) const {
        return g.i + m_[0] * (g.j + m_[1] * g.k);
    }
    GridIndex element_coords(int elem) const {
        return {elem % m_[0], (elem / m_[0]) % m_[1], elem / (m_[0] * m_[1])};
    }
    /// Lower-left-front corner of an element.
    Vec3 element_base(int elem) const;

    /// Writes the 2^dim corner node ids in lexicographic corner order.
    void element_nodes(int elem, int out[8]) const;

  private:
    int dim_;
    Vec3 origin_, extent_, h_;
    std::array<int, 3> m_;
    int node_count_, element_count_, interior_count_;
    std::vector<int> interior_of_;
    std::vector<int> node_of_interior_;
};

/// Disjoint tiling of the mesh into 2x2 (2D) or 2x2x2 (3D) element
/// patches, used by the coarse-grid interpolation postprocess. Every
/// subdivision count must be even.
class MacroPatchSet {
  public:
    explicit MacroPatchSet(const TensorMesh& mesh);

    int patch_count() const { return patch_count_; }
    int nodes_per_patch() const { return nodes_per_patch_; }
    int elements_per_patch() const { return elements_per_patch_; }

    /// 3^dim node ids of a patch, lexicographic order.
    const int* patch_nodes(int patch) const {
        return nodes_.data() + static_cast<size_t>(patch) * nodes_per_patch_;
    }
    /// 2^dim element ids of a patch, lexicographic order.
    const int* patch_elements(int patch) const {
        return elems_.data() + static_cast<size_t>(patch) * elements_per_patch_;
    }
    int patch_of_element(int elem) const { return patch_of_elem_[elem]; }

  private:
    int patch_count_, nodes_per_patch_, elements_per_patch_;
    std::vector<int> nodes_, elems_, patch_of_elem_;
};

}  // namespace kgz
