#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "codedc/errors.hpp"
#include "codedc/rng.hpp"

namespace codedc {

// Dense real matrix, row-major. Entries are validated finite on checked
// construction; all operations are pure and leave their operands intact.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols);  // zero-filled
    Mat(int rows, int cols, std::vector<double> entries);
    Mat(int rows, int cols, std::initializer_list<double> entries);

    static Mat identity(int n);
    static Mat gaussian(int rows, int cols, Rng& rng, double scale = 1.0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t size() const { return static_cast<std::int64_t>(rows_) * cols_; }

    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Mat& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

    double max_abs() const;
    bool all_finite() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);

// Standard product with a fixed summation order: for every output entry the
// inner index runs left to right, so repeated runs are bit-identical. This is
// the oracle every coded path is checked against.
Mat matmul(const Mat& a, const Mat& b);

Mat transpose(const Mat& a);
Mat hadamard(const Mat& a, const Mat& b);
Mat map_entries(const Mat& a, double (*fn)(double));

// max |a-b| / max(1, |b|_maxabs)
double rel_deviation(const Mat& a, const Mat& b);

// m x n grid of equally shaped blocks of a partitioned matrix.
class BlockGrid {
  public:
    BlockGrid(int grid_rows, int grid_cols, std::vector<Mat> blocks);

    int grid_rows() const { return grid_rows_; }
    int grid_cols() const { return grid_cols_; }
    int block_rows() const { return blocks_.front().rows(); }
    int block_cols() const { return blocks_.front().cols(); }

    const Mat& block(int i, int j) const { return blocks_[static_cast<std::size_t>(i) * grid_cols_ + j]; }
    Mat& block(int i, int j) { return blocks_[static_cast<std::size_t>(i) * grid_cols_ + j]; }

  private:
    int grid_rows_;
    int grid_cols_;
    std::vector<Mat> blocks_;
};

// Splits A into an m x n grid of equal blocks; rejects non-divisible shapes.
BlockGrid block_partition(const Mat& a, int m, int n);

// Inverse of block_partition, exact.
Mat reassemble(const BlockGrid& grid);

// Sum of block * point^exponent over the given terms. Powers are walked up
// multiplicatively from exponent 0, never recomputed with pow().
Mat eval_block_poly(const std::vector<std::pair<const Mat*, int>>& terms, double point);
Mat eval_block_poly(const std::vector<std::pair<Mat, int>>& terms, double point);

}  // namespace codedc
