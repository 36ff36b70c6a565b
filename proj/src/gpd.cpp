#include "codedc/gpd.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace codedc {

namespace {

double power_int(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<double> chebyshev_nodes(int count) {
    std::vector<double> pts(count);
    for (int p = 0; p < count; ++p) pts[p] = std::cos(std::numbers::pi * (2 * p + 1) / (2.0 * count));
    // odd counts place one node at zero; replace it by the midpoint with its
    // neighbor so every point stays usable as a nonzero evaluation point
    for (int p = 0; p < count; ++p) {
        if (std::abs(pts[p]) < 1e-12) {
            int neighbor = (p + 1 < count) ? p + 1 : p - 1;
            pts[p] = 0.5 * (pts[p] + pts[neighbor]);
        }
    }
    return pts;
}

int base_threshold(int m, int n, int d1, int d2, Substitution substitution) {
    int d = std::max(d1, d2);
    return substitution == Substitution::U_EQ_VN ? m * n * d + n - 1 : m * n * d + m - 1;
}

void check_worker_range(const CodeParams& params, int p) {
    if (p < 0 || p >= params.P)
        throw DimensionError("worker index " + std::to_string(p) + " outside [0, " + std::to_string(params.P) + ")");
}

}  // namespace

int recovery_threshold_mv(int m, int n) { return m * n + n - 1; }

int recovery_threshold_mm(int m, int n, int d) { return m * n * d + n - 1; }

CodeParams make_params(int m, int n, int d1, int d2, int P, Substitution substitution) {
    if (m < 1 || n < 1 || d1 < 1 || d2 < 1 || P < 1)
        throw DimensionError("code parameters must be positive");
    const int threshold = base_threshold(m, n, d1, d2, substitution);
    if (P < threshold)
        throw InsufficientWorkers("P = " + std::to_string(P) + " is below the recovery threshold " +
                                  std::to_string(threshold));

    CodeParams params;
    params.m = m;
    params.n = n;
    params.d1 = d1;
    params.d2 = d2;
    params.P = P;
    params.substitution = substitution;
    params.points_a.resize(P);
    params.points_b.resize(P);
    params.points_c.resize(P);

    std::vector<double> nodes = chebyshev_nodes(P);
    if (substitution == Substitution::U_EQ_VN) {
        for (int p = 0; p < P; ++p) {
            params.points_b[p] = nodes[p];
            params.points_a[p] = power_int(nodes[p], n);
            params.points_c[p] = power_int(nodes[p], m * n);
        }
    } else {
        // v = u^m maps symmetric points onto each other for even m, so the
        // primary points live on a positive interval instead
        for (int p = 0; p < P; ++p) {
            double a = 1.0 + 0.5 * nodes[p];
            params.points_a[p] = a;
            params.points_b[p] = power_int(a, m);
            params.points_c[p] = power_int(a, m * n);
        }
    }
    validate_params(params);
    return params;
}

void validate_params(const CodeParams& params) {
    const int P = params.P;
    if (static_cast<int>(params.points_a.size()) != P || static_cast<int>(params.points_b.size()) != P ||
        static_cast<int>(params.points_c.size()) != P)
        throw DimensionError("point lists must have length P");
    for (int p = 0; p < P; ++p) {
        if (params.points_b[p] == 0.0) throw DegenerateCode("point b_" + std::to_string(p) + " is zero");
        for (int q = p + 1; q < P; ++q)
            if (params.points_b[p] == params.points_b[q])
                throw DegenerateCode("points b_" + std::to_string(p) + " and b_" + std::to_string(q) + " collide");
    }
    for (int p = 0; p < P; ++p) {
        double a_expect, c_expect;
        if (params.substitution == Substitution::U_EQ_VN) {
            a_expect = power_int(params.points_b[p], params.n);
            c_expect = power_int(params.points_b[p], params.m * params.n);
            if (params.points_a[p] != a_expect || params.points_c[p] != c_expect)
                throw DegenerateCode("substitution u=v^n violated at worker " + std::to_string(p));
        } else {
            double b_expect = power_int(params.points_a[p], params.m);
            c_expect = power_int(params.points_a[p], params.m * params.n);
            if (params.points_b[p] != b_expect || params.points_c[p] != c_expect)
                throw DegenerateCode("substitution v=u^m violated at worker " + std::to_string(p));
        }
    }
    const int threshold = base_threshold(params.m, params.n, params.d1, params.d2, params.substitution);
    if (P < threshold)
        throw InsufficientWorkers("P = " + std::to_string(P) + " is below the recovery threshold " +
                                  std::to_string(threshold));
}

Shard encode_weight_shard(const Mat& w, const CodeParams& params, int p) {
    check_worker_range(params, p);
    BlockGrid grid = block_partition(w, params.m, params.n);
    const double a = params.points_a[p];
    const double b = params.points_b[p];
    Mat payload(grid.block_rows(), grid.block_cols());
    double a_pow = 1.0;
    for (int i = 0; i < params.m; ++i) {
        std::vector<std::pair<const Mat*, int>> row_terms;
        row_terms.reserve(params.n);
        for (int j = 0; j < params.n; ++j) row_terms.emplace_back(&grid.block(i, j), j);
        payload = payload + a_pow * eval_block_poly(row_terms, b);
        a_pow *= a;
    }
    return Shard{p, std::move(payload), ShardKind::WEIGHT};
}

Shard encode_input_ff(const Mat& x, const CodeParams& params, int p) {
    check_worker_range(params, p);
    BlockGrid grid = block_partition(x, params.n, params.d1);
    const double b = params.points_b[p];
    const double c = params.points_c[p];
    Mat payload(grid.block_rows(), grid.block_cols());
    double c_pow = 1.0;
    for (int k = 0; k < params.d1; ++k) {
        std::vector<std::pair<const Mat*, int>> col_terms;
        col_terms.reserve(params.n);
        for (int j = 0; j < params.n; ++j) col_terms.emplace_back(&grid.block(j, k), params.n - 1 - j);
        payload = payload + c_pow * eval_block_poly(col_terms, b);
        c_pow *= c;
    }
    return Shard{p, std::move(payload), ShardKind::INPUT_FF};
}

Shard encode_input_bp(const Mat& delta_t, const CodeParams& params, int p) {
    check_worker_range(params, p);
    BlockGrid grid = block_partition(delta_t, params.d2, params.m);
    const double a = params.points_a[p];
    const double c = params.points_c[p];
    Mat payload(grid.block_rows(), grid.block_cols());
    double c_pow = 1.0;
    for (int k = 0; k < params.d2; ++k) {
        std::vector<std::pair<const Mat*, int>> row_terms;
        row_terms.reserve(params.m);
        for (int i = 0; i < params.m; ++i) row_terms.emplace_back(&grid.block(k, i), params.m - 1 - i);
        payload = payload + c_pow * eval_block_poly(row_terms, a);
        c_pow *= c;
    }
    return Shard{p, std::move(payload), ShardKind::INPUT_BP};
}

int ff_unknown_count(const CodeParams& params) {
    const int m = params.m, n = params.n, d1 = params.d1;
    return params.substitution == Substitution::U_EQ_VN ? m * n * d1 + n - 1 : m * n * d1 + m * n - m;
}

int bp_unknown_count(const CodeParams& params) {
    const int m = params.m, n = params.n, d2 = params.d2;
    return params.substitution == Substitution::U_EQ_VN ? m * n * d2 + m * n - n : m * n * d2 + m - 1;
}

ExponentMap target_exponents_ff(const CodeParams& params) {
    const int m = params.m, n = params.n, d1 = params.d1;
    ExponentMap map;
    map.rows = m;
    map.cols = d1;
    map.exponents.resize(static_cast<std::size_t>(m) * d1);
    map.unknown_count = ff_unknown_count(params);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < d1; ++k) {
            int e = params.substitution == Substitution::U_EQ_VN ? n * i + m * n * k + n - 1
                                                                 : m * n * k + m * (n - 1) + i;
            map.exponents[static_cast<std::size_t>(i) * d1 + k] = e;
        }
    }
    return map;
}

ExponentMap target_exponents_bp(const CodeParams& params) {
    const int m = params.m, n = params.n, d2 = params.d2;
    ExponentMap map;
    map.rows = d2;
    map.cols = n;
    map.exponents.resize(static_cast<std::size_t>(d2) * n);
    map.unknown_count = bp_unknown_count(params);
    for (int k = 0; k < d2; ++k) {
        for (int j = 0; j < n; ++j) {
            int e = params.substitution == Substitution::U_EQ_VN ? m * n * k + n * (m - 1) + j
                                                                 : m * n * k + m * j + m - 1;
            map.exponents[static_cast<std::size_t>(k) * n + j] = e;
        }
    }
    return map;
}

int weight_exponent(const CodeParams& params, int i, int j) {
    return params.substitution == Substitution::U_EQ_VN ? params.n * i + j : i + params.m * j;
}

}  // namespace codedc
