#pragma once

#include <vector>

#include "codedc/mat.hpp"

namespace codedc {

// Which variable substitution collapses the multivariate product polynomial
// into one variable. U_EQ_VN sets u = v^n (and w = v^{mn}); V_EQ_UM sets
// v = u^m (and w = u^{mn}).
enum class Substitution { U_EQ_VN, V_EQ_UM };

// Code geometry: W is split into an m x n grid, the feedforward operand into
// n x d1, the backprop operand into d2 x m. Worker p evaluates the encoding
// polynomials at (a_p, b_p, c_p).
struct CodeParams {
    int m = 1;
    int n = 1;
    int d1 = 1;
    int d2 = 1;
    int P = 1;
    Substitution substitution = Substitution::U_EQ_VN;
    std::vector<double> points_a;
    std::vector<double> points_b;
    std::vector<double> points_c;

    int k_storage() const { return m * n; }
    // evaluation points of the collapsed single-variable polynomial
    const std::vector<double>& eval_points() const {
        return substitution == Substitution::U_EQ_VN ? points_b : points_a;
    }
};

int recovery_threshold_mv(int m, int n);
int recovery_threshold_mm(int m, int n, int d);

// Chebyshev evaluation points (shifted off zero when a node lands there),
// derived points per the substitution. Throws InsufficientWorkers when P is
// below the recovery threshold.
CodeParams make_params(int m, int n, int d1, int d2, int P,
                       Substitution substitution = Substitution::U_EQ_VN);

// Checks the CodeParams invariants (distinct nonzero points, substitution
// consistency, threshold); throws on violation.
void validate_params(const CodeParams& params);

enum class ShardKind { WEIGHT, INPUT_FF, INPUT_BP };

// One worker's evaluation of a block-coefficient polynomial.
struct Shard {
    int worker_index = 0;
    Mat payload;
    ShardKind kind = ShardKind::WEIGHT;
};

// payload = sum_{i,j} W_{i,j} a_p^i b_p^j
Shard encode_weight_shard(const Mat& w, const CodeParams& params, int p);

// payload = sum_{j,k} X_{j,k} b_p^{n-1-j} c_p^k  (column vector when d1 = 1)
Shard encode_input_ff(const Mat& x_or_big_x, const CodeParams& params, int p);

// payload = sum_{k,i} DeltaT_{k,i} c_p^k a_p^{m-1-i}  (row vector when d2 = 1)
Shard encode_input_bp(const Mat& delta_t, const CodeParams& params, int p);

// Exponent of the collapsed product polynomial that carries each desired
// output block. rows x cols is m x d1 for the feedforward product (i, k) and
// d2 x n for the backprop product (k, j). unknown_count is the number of
// coefficients interpolation must recover (degree + 1).
struct ExponentMap {
    int rows = 0;
    int cols = 0;
    std::vector<int> exponents;  // row-major
    int unknown_count = 0;

    int at(int r, int c) const { return exponents[static_cast<std::size_t>(r) * cols + c]; }
};

ExponentMap target_exponents_ff(const CodeParams& params);
ExponentMap target_exponents_bp(const CodeParams& params);

// Coefficient counts of the collapsed product polynomials (the Q of the
// interpolation problem) for the feedforward and backprop products.
int ff_unknown_count(const CodeParams& params);
int bp_unknown_count(const CodeParams& params);

// Exponent of v (resp. u) that block W_{i,j} occupies in the collapsed weight
// polynomial; a bijection onto 0..mn-1, so mn shards regenerate any other.
int weight_exponent(const CodeParams& params, int i, int j);

}  // namespace codedc
