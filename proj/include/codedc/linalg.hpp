#pragma once

#include <vector>

#include "codedc/mat.hpp"

namespace codedc::linalg {

// min ||A x - b||_2 for a full-column-rank A (rows >= cols)
std::vector<double> lstsq(const Mat& a, const std::vector<double>& b);

// least squares with a matrix right-hand side, one solve per column of B
Mat lstsq_mat(const Mat& a, const Mat& b);

// solves the square system A x = b
std::vector<double> solve(const Mat& a, const std::vector<double>& b);

// orthonormal basis (as rows) of the left null space of A, i.e. all h with
// h^T A = 0; rows(A) - rank(A) rows. Throws DegenerateCode if A is
// column-rank-deficient.
Mat left_null_space(const Mat& a);

// orthonormal columns spanning range(A); A must have full column rank
Mat orthonormal_range(const Mat& a);

// inverse of a square full-rank matrix
Mat inverse(const Mat& a);

}  // namespace codedc::linalg
