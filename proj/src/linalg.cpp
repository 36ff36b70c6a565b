#include "codedc/linalg.hpp"

#include <Eigen/Dense>

namespace codedc::linalg {

namespace {

using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMat> as_eigen(const Mat& a) {
    return Eigen::Map<const EMat>(a.data().data(), a.rows(), a.cols());
}

Mat from_eigen(const EMat& e) {
    Mat out(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
    Eigen::Map<EMat>(out.data().data(), e.rows(), e.cols()) = e;
    return out;
}

}  // namespace

std::vector<double> lstsq(const Mat& a, const std::vector<double>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw DimensionError("lstsq rhs length mismatch");
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), b.size());
    Eigen::VectorXd x = as_eigen(a).householderQr().solve(rhs);
    return std::vector<double>(x.data(), x.data() + x.size());
}

Mat lstsq_mat(const Mat& a, const Mat& b) {
    if (b.rows() != a.rows()) throw DimensionError("lstsq_mat rhs row count mismatch");
    EMat x = as_eigen(a).householderQr().solve(as_eigen(b));
    return from_eigen(x);
}

std::vector<double> solve(const Mat& a, const std::vector<double>& b) {
    if (a.rows() != a.cols()) throw DimensionError("solve requires a square matrix");
    if (static_cast<int>(b.size()) != a.rows()) throw DimensionError("solve rhs length mismatch");
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), b.size());
    Eigen::VectorXd x = as_eigen(a).partialPivLu().solve(rhs);
    return std::vector<double>(x.data(), x.data() + x.size());
}

Mat left_null_space(const Mat& a) {
    EMat m = as_eigen(a);
    Eigen::ColPivHouseholderQR<EMat> qr(m);
    const auto rank = qr.rank();
    if (rank < a.cols()) throw DegenerateCode("matrix is column-rank-deficient; no MDS structure");
    // columns of Q beyond the rank span the orthogonal complement of range(A)
    EMat q = qr.householderQ() * EMat::Identity(a.rows(), a.rows());
    EMat basis = q.rightCols(a.rows() - rank).transpose();
    return from_eigen(basis);
}

Mat orthonormal_range(const Mat& a) {
    EMat m = as_eigen(a);
    Eigen::HouseholderQR<EMat> qr(m);
    EMat q = qr.householderQ() * EMat::Identity(a.rows(), a.cols());
    return from_eigen(q);
}

Mat inverse(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse requires a square matrix");
    EMat inv = as_eigen(a).partialPivLu().inverse();
    return from_eigen(inv);
}

}  // namespace codedc::linalg
