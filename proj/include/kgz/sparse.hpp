/// @file sparse.hpp
/// @brief Compressed sparse row matrices sized for tensor-mesh stencils.
#pragma once

#include <vector>

#include "kgz/types.hpp"

namespace kgz {

class SparseMatrix {
  public:
    SparseMatrix() = default;

    /// Takes a fixed sparsity pattern; values start at zero.
    SparseMatrix(int n, std::vector<int> row_ptr, std::vector<int> col_idx)
        : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
          val_(col_idx_.size(), 0.0) {}

    int rows() const { return n_; }
    int nnz() const { return static_cast<int>(col_idx_.size()); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return val_; }
    std::vector<double>& values() { return val_; }

    /// Adds v to entry (row, col); the position must exist in the pattern.
    void add(int row, int col, double v);

    /// Reads entry (row, col), zero when outside the pattern.
    double get(int row, int col) const;

    /// y = A x
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;

    std::vector<double> diagonal() const;

    /// this = a*this + b*other; patterns must be identical.
    void blend(double a, double b, const SparseMatrix& other);

    std::vector<std::vector<double>> to_dense() const;

  private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> val_;
};

}  // namespace kgz
