#include "codedc/mat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace codedc {

namespace {

// zero-dimension matrices are allowed (an error-free code has an empty
// parity check); negative dimensions are not
void check_shape(int rows, int cols) {
    if (rows < 0) throw DimensionError("rows must be nonnegative, got " + std::to_string(rows));
    if (cols < 0) throw DimensionError("cols must be nonnegative, got " + std::to_string(cols));
}

}  // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Mat::Mat(int rows, int cols, std::vector<double> entries) : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_shape(rows, cols);
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionError("entries length " + std::to_string(data_.size()) + " does not equal rows*cols = " +
                             std::to_string(static_cast<std::int64_t>(rows) * cols));
    if (!all_finite()) throw DimensionError("matrix entries must be finite");
}

Mat::Mat(int rows, int cols, std::initializer_list<double> entries)
    : Mat(rows, cols, std::vector<double>(entries)) {}

Mat Mat::identity(int n) {
    Mat out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

Mat Mat::gaussian(int rows, int cols, Rng& rng, double scale) {
    Mat out(rows, cols);
    for (double& v : out.data()) v = scale * rng.normal();
    return out;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool Mat::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Mat operator+(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw DimensionError("matrix addition shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw DimensionError("matrix subtraction shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

Mat operator*(double s, const Mat& a) {
    Mat out = a;
    for (double& v : out.data()) v *= s;
    return out;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    Mat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

Mat transpose(const Mat& a) {
    Mat out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Mat hadamard(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw DimensionError("hadamard shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] *= b.data()[i];
    return out;
}

Mat map_entries(const Mat& a, double (*fn)(double)) {
    Mat out = a;
    for (double& v : out.data()) v = fn(v);
    return out;
}

double rel_deviation(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw DimensionError("rel_deviation shape mismatch");
    double num = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) num = std::max(num, std::abs(a.data()[i] - b.data()[i]));
    return num / std::max(1.0, b.max_abs());
}

BlockGrid::BlockGrid(int grid_rows, int grid_cols, std::vector<Mat> blocks)
    : grid_rows_(grid_rows), grid_cols_(grid_cols), blocks_(std::move(blocks)) {
    if (grid_rows <= 0 || grid_cols <= 0) throw DimensionError("block grid dimensions must be positive");
    if (blocks_.size() != static_cast<std::size_t>(grid_rows) * grid_cols)
        throw DimensionError("block count does not match grid shape");
    for (const Mat& b : blocks_)
        if (!b.same_shape(blocks_.front())) throw DimensionError("blocks must all share one shape");
}

BlockGrid block_partition(const Mat& a, int m, int n) {
    if (m <= 0 || n <= 0) throw DimensionError("partition counts must be positive");
    if (a.rows() % m != 0)
        throw DimensionError("row axis: " + std::to_string(m) + " does not divide " + std::to_string(a.rows()));
    if (a.cols() % n != 0)
        throw DimensionError("col axis: " + std::to_string(n) + " does not divide " + std::to_string(a.cols()));
    const int br = a.rows() / m;
    const int bc = a.cols() / n;
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            Mat blk(br, bc);
            for (int r = 0; r < br; ++r)
                for (int c = 0; c < bc; ++c) blk(r, c) = a(i * br + r, j * bc + c);
            blocks.push_back(std::move(blk));
        }
    }
    return BlockGrid(m, n, std::move(blocks));
}

Mat reassemble(const BlockGrid& grid) {
    const int br = grid.block_rows();
    const int bc = grid.block_cols();
    Mat out(grid.grid_rows() * br, grid.grid_cols() * bc);
    for (int i = 0; i < grid.grid_rows(); ++i)
        for (int j = 0; j < grid.grid_cols(); ++j)
            for (int r = 0; r < br; ++r)
                for (int c = 0; c < bc; ++c) out(i * br + r, j * bc + c) = grid.block(i, j)(r, c);
    return out;
}

Mat eval_block_poly(const std::vector<std::pair<const Mat*, int>>& terms, double point) {
    if (terms.empty()) throw DimensionError("eval_block_poly needs at least one term");
    for (const auto& [mat, exp] : terms) {
        if (exp < 0) throw DimensionError("exponents must be nonnegative");
        if (!mat->same_shape(*terms.front().first)) throw DimensionError("eval_block_poly blocks differ in shape");
    }
    // walk terms in exponent order, carrying point^e upward one multiply at a time
    std::vector<std::size_t> order(terms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return terms[a].second < terms[b].second; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (terms[order[i]].second == terms[order[i - 1]].second)
            throw DimensionError("eval_block_poly exponents must be distinct");

    Mat acc(terms.front().first->rows(), terms.front().first->cols());
    double power = 1.0;
    int current_exp = 0;
    for (std::size_t idx : order) {
        const auto& [mat, exp] = terms[idx];
        while (current_exp < exp) {
            power *= point;
            ++current_exp;
        }
        for (std::size_t i = 0; i < acc.data().size(); ++i) acc.data()[i] += mat->data()[i] * power;
    }
    return acc;
}

Mat eval_block_poly(const std::vector<std::pair<Mat, int>>& terms, double point) {
    std::vector<std::pair<const Mat*, int>> refs;
    refs.reserve(terms.size());
    for (const auto& [mat, exp] : terms) refs.emplace_back(&mat, exp);
    return eval_block_poly(refs, point);
}

}  // namespace codedc
