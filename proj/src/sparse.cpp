#include "kgz/sparse.hpp"

#include <algorithm>
#include <string>

namespace kgz {

void SparseMatrix::add(int row, int col, double v) {
    const int b = row_ptr_[row], e = row_ptr_[row + 1];
    auto it = std::lower_bound(col_idx_.begin() + b, col_idx_.begin() + e, col);
    if (it == col_idx_.begin() + e || *it != col)
        throw InvalidArgument("sparse add outside pattern: (" + std::to_string(row) +
                              "," + std::to_string(col) + ")");
    val_[it - col_idx_.begin()] += v;
}

double SparseMatrix::get(int row, int col) const {
    const int b = row_ptr_[row], e = row_ptr_[row + 1];
    auto it = std::lower_bound(col_idx_.begin() + b, col_idx_.begin() + e, col);
    if (it == col_idx_.begin() + e || *it != col) return 0.0;
    return val_[it - col_idx_.begin()];
}

void SparseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.resize(n_);
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * x[col_idx_[k]];
        y[r] = s;
    }
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(n_, 0.0);
    for (int r = 0; r < n_; ++r) d[r] = get(r, r);
    return d;
}

void SparseMatrix::blend(double a, double b, const SparseMatrix& other) {
    if (other.n_ != n_ || other.col_idx_ != col_idx_ || other.row_ptr_ != row_ptr_)
        throw InvalidArgument("sparse blend requires identical patterns");
    for (size_t k = 0; k < val_.size(); ++k) val_[k] = a * val_[k] + b * other.val_[k];
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
    std::vector<std::vector<double>> d(n_, std::vector<double>(n_, 0.0));
    for (int r = 0; r < n_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d[r][col_idx_[k]] = val_[k];
    return d;
}

}  // namespace kgz
