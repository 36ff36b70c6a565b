#include <cmath>
#include <numbers>

#include "codedc/dnn.hpp"
#include "codedc/linalg.hpp"
#include "codedc/rng.hpp"

namespace codedc {

namespace {

const FaultSpec* find_fault(const FaultPlan& plan, StepId step, int node_id) {
    const FaultSpec* hit = nullptr;
    for (const auto& [w, spec] : plan.at(step))
        if (w == node_id) hit = &spec;
    return hit;
}

bool mats_match(const Mat& a, const Mat& b) {
    double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    return (a - b).max_abs() <= 1e-9 * scale;
}

// Groups candidate vectors by approximate equality; model 1 takes the strict
// majority, model 2 any value seen at least twice (continuous noise repeats
// itself with probability zero). Returns the winning group's members.
std::optional<std::pair<Mat, std::vector<int>>> vote(const std::vector<Mat>& candidates, int model) {
    const int r = static_cast<int>(candidates.size());
    std::vector<int> group(r, -1);
    int group_count = 0;
    for (int i = 0; i < r; ++i) {
        if (group[i] != -1) continue;
        group[i] = group_count;
        for (int j = i + 1; j < r; ++j)
            if (group[j] == -1 && mats_match(candidates[i], candidates[j])) group[j] = group_count;
        ++group_count;
    }
    int best = -1, best_size = 0;
    for (int g = 0; g < group_count; ++g) {
        int size = 0;
        for (int i = 0; i < r; ++i)
            if (group[i] == g) ++size;
        if (size > best_size) {
            best_size = size;
            best = g;
        }
    }
    const int need = model == 1 ? r / 2 + 1 : 2;
    if (r == 1 && model == 2) return std::nullopt;  // nothing to match against
    if (best_size < need) return std::nullopt;
    std::vector<int> members;
    for (int i = 0; i < r; ++i)
        if (group[i] == best) members.push_back(i);
    return std::make_pair(candidates[members.front()], members);
}

}  // namespace

ReplicationState make_replication_state(const Mat& w, int m, int n, int p) {
    if (p % (m * n) != 0) throw DimensionError("replication requires mn | P");
    ReplicationState state;
    state.m = m;
    state.n = n;
    state.replicas = p / (m * n);
    BlockGrid grid = block_partition(w, m, n);
    for (int r = 0; r < state.replicas; ++r) {
        std::vector<Mat> copy;
        copy.reserve(static_cast<std::size_t>(m) * n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) copy.push_back(grid.block(i, j));
        state.blocks.push_back(std::move(copy));
    }
    return state;
}

BaselineStepResult replication_train_step(ReplicationState& state, const Mat& x, const Mat& delta_t, double eta,
                                          double lambda, const FaultPlan& plan, int model,
                                          std::uint64_t root_seed, int iteration) {
    const int m = state.m, n = state.n, reps = state.replicas;
    BaselineStepResult result;
    BlockGrid x_parts = block_partition(x, n, 1);
    BlockGrid d_parts = block_partition(delta_t, 1, m);

    auto node_id = [&](int rep, int i, int j) { return rep * m * n + i * n + j; };

    // feedforward: row sums per replica, then a cross-replica vote per row
    std::vector<Mat> s_blocks;
    for (int i = 0; i < m; ++i) {
        std::vector<Mat> candidates;
        for (int rep = 0; rep < reps; ++rep) {
            Mat acc(state.blocks[rep][i * n].rows(), x_parts.block(0, 0).cols());
            for (int j = 0; j < n; ++j) {
                Mat prod = matmul(state.blocks[rep][i * n + j], x_parts.block(j, 0));
                if (const FaultSpec* f = find_fault(plan, StepId::O1, node_id(rep, i, j))) {
                    auto faulted = apply_fault(prod, *f, derive_seed(root_seed, static_cast<int>(StepId::O1),
                                                                     node_id(rep, i, j), iteration));
                    if (!faulted.has_value()) throw DimensionError("replication does not model erasures");
                    prod = std::move(*faulted);
                }
                acc = acc + prod;
            }
            candidates.push_back(std::move(acc));
        }
        auto winner = vote(candidates, model);
        if (!winner.has_value()) {
            result.ff_tag = DecodeTag::FAILURE;
            return result;
        }
        bool all_agree = static_cast<int>(winner->second.size()) == reps;
        if (!all_agree) {
            result.ff_tag = DecodeTag::CORRECTED;
            std::vector<bool> ok(reps, false);
            for (int idx : winner->second) ok[idx] = true;
            for (int rep = 0; rep < reps; ++rep)
                if (!ok[rep])
                    for (int j = 0; j < n; ++j) result.ff_locations.insert(node_id(rep, i, j));
        }
        s_blocks.push_back(std::move(winner->first));
    }
    result.s = reassemble(BlockGrid(m, 1, std::move(s_blocks)));

    // backprop: column sums per replica, vote per column
    std::vector<Mat> c_blocks;
    for (int j = 0; j < n; ++j) {
        std::vector<Mat> candidates;
        for (int rep = 0; rep < reps; ++rep) {
            Mat acc(delta_t.rows(), state.blocks[rep][j].cols());
            for (int i = 0; i < m; ++i) {
                Mat prod = matmul(d_parts.block(0, i), state.blocks[rep][i * n + j]);
                if (const FaultSpec* f = find_fault(plan, StepId::O2, node_id(rep, i, j))) {
                    auto faulted = apply_fault(prod, *f, derive_seed(root_seed, static_cast<int>(StepId::O2),
                                                                     node_id(rep, i, j), iteration));
                    if (!faulted.has_value()) throw DimensionError("replication does not model erasures");
                    prod = std::move(*faulted);
                }
                acc = acc + prod;
            }
            candidates.push_back(std::move(acc));
        }
        auto winner = vote(candidates, model);
        if (!winner.has_value()) {
            result.bp_tag = DecodeTag::FAILURE;
            return result;
        }
        if (static_cast<int>(winner->second.size()) != reps) {
            result.bp_tag = DecodeTag::CORRECTED;
            std::vector<bool> ok(reps, false);
            for (int idx : winner->second) ok[idx] = true;
            for (int rep = 0; rep < reps; ++rep)
                if (!ok[rep])
                    for (int i = 0; i < m; ++i) result.bp_locations.insert(node_id(rep, i, j));
        }
        c_blocks.push_back(std::move(winner->first));
    }
    result.c_t = reassemble(BlockGrid(1, n, std::move(c_blocks)));

    // update: node (rep, i, j) holds x_j and delta_i
    BlockGrid delta_rows = block_partition(transpose(delta_t), m, 1);
    for (int rep = 0; rep < reps; ++rep) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                Mat updated = (1.0 - eta * lambda) * state.blocks[rep][i * n + j] +
                              eta * matmul(delta_rows.block(i, 0), transpose(x_parts.block(j, 0)));
                if (const FaultSpec* f = find_fault(plan, StepId::O3, node_id(rep, i, j))) {
                    auto faulted = apply_fault(updated, *f, derive_seed(root_seed, static_cast<int>(StepId::O3),
                                                                        node_id(rep, i, j), iteration));
                    if (faulted.has_value()) updated = std::move(*faulted);
                }
                state.blocks[rep][i * n + j] = std::move(updated);
            }
        }
    }
    return result;
}

namespace {

// systematic generator transpose of a (rows, k) Vandermonde MDS code:
// V * inv(V_top) so the first k rows are the identity
Mat systematic_generator_t(int rows, int k) {
    std::vector<double> pts(rows);
    for (int p = 0; p < rows; ++p) pts[p] = std::cos(std::numbers::pi * (2 * p + 1) / (2.0 * rows));
    Mat vand(rows, k);
    for (int r = 0; r < rows; ++r) {
        double pw = 1.0;
        for (int c = 0; c < k; ++c) {
            vand(r, c) = pw;
            pw *= pts[r];
        }
    }
    Mat top(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) top(r, c) = vand(r, c);
    return matmul(vand, linalg::inverse(top));
}

}  // namespace

MdsState make_mds_state(const Mat& w, int m, int n, int p_f, int p_b) {
    if (p_f % n != 0) throw DimensionError("MDS requires n | P_f");
    if (p_b % m != 0) throw DimensionError("MDS requires m | P_b");
    MdsState state;
    state.m = m;
    state.n = n;
    state.p_f = p_f;
    state.p_b = p_b;
    state.row_gen_t = systematic_generator_t(p_f / n, m);
    state.col_gen = transpose(systematic_generator_t(p_b / m, n));
    state.row_code = code_from_generator(state.row_gen_t);
    state.col_code = code_from_generator(transpose(state.col_gen));

    BlockGrid grid = block_partition(w, m, n);
    const int rows = p_f / n, cols = p_b / m;
    for (int r = 0; r < rows; ++r) {
        std::vector<Mat> row_blocks;
        for (int c = 0; c < cols; ++c) {
            Mat acc(grid.block_rows(), grid.block_cols());
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    acc = acc + (state.row_gen_t(r, i) * state.col_gen(j, c)) * grid.block(i, j);
            row_blocks.push_back(std::move(acc));
        }
        state.blocks.push_back(std::move(row_blocks));
    }
    return state;
}

BaselineStepResult mds_train_step(MdsState& state, const Mat& x, const Mat& delta_t, double eta, double lambda,
                                  const FaultPlan& plan, int model, std::uint64_t root_seed, int iteration) {
    const int m = state.m, n = state.n;
    const int grid_rows = state.p_f / n, grid_cols = state.p_b / m;
    const DecodeMode mode = model == 1 ? DecodeMode::ADVERSARIAL : DecodeMode::PROBABILISTIC;
    BaselineStepResult result;

    BlockGrid x_parts = block_partition(x, n, 1);
    BlockGrid d_parts = block_partition(delta_t, 1, m);

    // feedforward on the P_f nodes (grid_rows x n, node id r*n + j): each
    // block-row aggregate is one position of the row-code codeword
    std::vector<std::optional<Mat>> ff_codeword(grid_rows);
    for (int r = 0; r < grid_rows; ++r) {
        Mat acc(state.blocks[0][0].rows(), x.cols());
        for (int j = 0; j < n; ++j) {
            Mat prod = matmul(state.blocks[r][j], x_parts.block(j, 0));
            if (const FaultSpec* f = find_fault(plan, StepId::O1, r * n + j)) {
                auto faulted = apply_fault(prod, *f,
                                           derive_seed(root_seed, static_cast<int>(StepId::O1), r * n + j, iteration));
                if (!faulted.has_value()) throw DimensionError("MDS step does not model erasures");
                prod = std::move(*faulted);
            }
            acc = acc + prod;
        }
        ff_codeword[r] = std::move(acc);
    }
    BlockStreamResult ff = decode_block_stream(state.row_code, ff_codeword, mode);
    result.ff_tag = ff.outcome.tag;
    if (ff.outcome.tag == DecodeTag::FAILURE) return result;
    if (ff.outcome.error_locations.has_value())
        for (int r : *ff.outcome.error_locations)
            for (int j = 0; j < n; ++j) result.ff_locations.insert(r * n + j);
    {
        std::vector<Mat> blocks(ff.coefficients.begin(), ff.coefficients.begin() + m);
        result.s = reassemble(BlockGrid(m, 1, std::move(blocks)));
    }

    // backprop on the P_b nodes (m x grid_cols, node id i*grid_cols + c)
    std::vector<std::optional<Mat>> bp_codeword(grid_cols);
    for (int c = 0; c < grid_cols; ++c) {
        Mat acc(delta_t.rows(), state.blocks[0][0].cols());
        for (int i = 0; i < m; ++i) {
            Mat prod = matmul(d_parts.block(0, i), state.blocks[i][c]);
            if (const FaultSpec* f = find_fault(plan, StepId::O2, i * grid_cols + c)) {
                auto faulted = apply_fault(prod, *f, derive_seed(root_seed, static_cast<int>(StepId::O2),
                                                                 i * grid_cols + c, iteration));
                if (!faulted.has_value()) throw DimensionError("MDS step does not model erasures");
                prod = std::move(*faulted);
            }
            acc = acc + prod;
        }
        bp_codeword[c] = std::move(acc);
    }
    BlockStreamResult bp = decode_block_stream(state.col_code, bp_codeword, mode);
    result.bp_tag = bp.outcome.tag;
    if (bp.outcome.tag == DecodeTag::FAILURE) return result;
    if (bp.outcome.error_locations.has_value())
        for (int c : *bp.outcome.error_locations)
            for (int i = 0; i < m; ++i) result.bp_locations.insert(i * grid_cols + c);
    {
        std::vector<Mat> blocks(bp.coefficients.begin(), bp.coefficients.begin() + n);
        result.c_t = reassemble(BlockGrid(1, n, std::move(blocks)));
    }

    // update: node (r, c) applies its row/column-encoded rank-1 term
    BlockGrid delta_rows = block_partition(transpose(delta_t), m, 1);
    for (int r = 0; r < grid_rows; ++r) {
        for (int c = 0; c < grid_cols; ++c) {
            Mat d_enc(delta_rows.block(0, 0).rows(), delta_rows.block(0, 0).cols());
            for (int i = 0; i < m; ++i) d_enc = d_enc + state.row_gen_t(r, i) * delta_rows.block(i, 0);
            Mat x_enc(x_parts.block(0, 0).rows(), x_parts.block(0, 0).cols());
            for (int j = 0; j < n; ++j) x_enc = x_enc + state.col_gen(j, c) * x_parts.block(j, 0);
            Mat updated = (1.0 - eta * lambda) * state.blocks[r][c] + eta * matmul(d_enc, transpose(x_enc));
            if (const FaultSpec* f = find_fault(plan, StepId::O3, r * grid_cols + c)) {
                auto faulted = apply_fault(updated, *f, derive_seed(root_seed, static_cast<int>(StepId::O3),
                                                                    r * grid_cols + c, iteration));
                if (faulted.has_value()) updated = std::move(*faulted);
            }
            state.blocks[r][c] = std::move(updated);
        }
    }
    return result;
}

}  // namespace codedc
