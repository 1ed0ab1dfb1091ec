#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eae/common.hpp"

namespace eae {

/// Row-major dense matrix of doubles. The flat `values` array has length
/// rows*cols and must stay finite; weight matrices and parameter gradients
/// all use this layout.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    static DenseMatrix zeros(std::size_t rows, std::size_t cols);

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    std::size_t size() const { return rows * cols; }
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);     // A * B
DenseMatrix matmul_ta(const DenseMatrix& a, const DenseMatrix& b);  // A^T * B
DenseMatrix matmul_tb(const DenseMatrix& a, const DenseMatrix& b);  // A * B^T

// Adds `bias` to every row in place.
void add_bias_rows(DenseMatrix& m, std::span<const double> bias);

std::vector<double> column_sums(const DenseMatrix& m);

}  // namespace eae
