#include "eae/matrix.hpp"

#include <Eigen/Dense>

#include <cstdio>

namespace eae {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using Map = Eigen::Map<RowMat>;

ConstMap map_of(const DenseMatrix& m) {
    return ConstMap(m.values.data(), static_cast<Eigen::Index>(m.rows),
                    static_cast<Eigen::Index>(m.cols));
}

Map map_of(DenseMatrix& m) {
    return Map(m.values.data(), static_cast<Eigen::Index>(m.rows),
               static_cast<Eigen::Index>(m.cols));
}

[[noreturn]] void throw_dim(const char* op, const DenseMatrix& a, const DenseMatrix& b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s: incompatible shapes %zux%zu and %zux%zu", op, a.rows,
                  a.cols, b.rows, b.cols);
    throw shape_error(buf);
}

}  // namespace

DenseMatrix DenseMatrix::zeros(std::size_t rows, std::size_t cols) {
    DenseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.values.assign(rows * cols, 0.0);
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw_dim("matmul", a, b);
    DenseMatrix c = DenseMatrix::zeros(a.rows, b.cols);
    map_of(c).noalias() = map_of(a) * map_of(b);
    return c;
}

DenseMatrix matmul_ta(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows) throw_dim("matmul_ta", a, b);
    DenseMatrix c = DenseMatrix::zeros(a.cols, b.cols);
    map_of(c).noalias() = map_of(a).transpose() * map_of(b);
    return c;
}

DenseMatrix matmul_tb(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols) throw_dim("matmul_tb", a, b);
    DenseMatrix c = DenseMatrix::zeros(a.rows, b.rows);
    map_of(c).noalias() = map_of(a) * map_of(b).transpose();
    return c;
}

void add_bias_rows(DenseMatrix& m, std::span<const double> bias) {
    if (bias.size() != m.cols) {
        throw shape_error("add_bias_rows: bias length " + std::to_string(bias.size()) +
                          " does not match column count " + std::to_string(m.cols));
    }
    double* row = m.values.data();
    for (std::size_t r = 0; r < m.rows; ++r, row += m.cols) {
        for (std::size_t c = 0; c < m.cols; ++c) row[c] += bias[c];
    }
}

std::vector<double> column_sums(const DenseMatrix& m) {
    std::vector<double> sums(m.cols, 0.0);
    const double* row = m.values.data();
    for (std::size_t r = 0; r < m.rows; ++r, row += m.cols) {
        for (std::size_t c = 0; c < m.cols; ++c) sums[c] += row[c];
    }
    return sums;
}

}  // namespace eae
