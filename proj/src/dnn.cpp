#include "codedc/dnn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "codedc/linalg.hpp"
#include "codedc/rng.hpp"

namespace codedc {

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double sigmoid_gain(double y) { return y * (1.0 - y); }

Mat sigmoid(const Mat& m) { return map_entries(m, sigmoid); }

Mat sigmoid_gain(const Mat& m) { return map_entries(m, sigmoid_gain); }

std::vector<std::string> validate_config(const TrainConfig& config) {
    if (config.layers < 1) throw DimensionError("need at least one layer");
    if (static_cast<int>(config.dims.size()) != config.layers + 1)
        throw DimensionError("dims must list N_0..N_L, got " + std::to_string(config.dims.size()) + " entries");
    for (int d : config.dims)
        if (d < 1) throw DimensionError("layer widths must be positive");
    if (config.batch < 1) throw DimensionError("batch must be positive");
    if (config.batch == 1) {
        if (config.d1 != 1 || config.d2 != 1) throw DimensionError("B = 1 uses the matrix-vector path (d1 = d2 = 1)");
    } else {
        if (config.batch % config.d1 != 0)
            throw DimensionError("batch axis: d1 = " + std::to_string(config.d1) + " does not divide B");
        if (config.batch % config.d2 != 0)
            throw DimensionError("batch axis: d2 = " + std::to_string(config.d2) + " does not divide B");
    }
    for (int l = 1; l <= config.layers; ++l) {
        if (config.dims[l] % config.m != 0)
            throw DimensionError("row axis: m does not divide N_" + std::to_string(l));
        if (config.dims[l - 1] % config.n != 0)
            throw DimensionError("col axis: n does not divide N_" + std::to_string(l - 1));
    }
    if (config.error_model != 1 && config.error_model != 2)
        throw DimensionError("error_model must be 1 or 2");

    CodeParams probe = make_params(config.m, config.n, config.d1, config.d2, config.num_workers,
                                   config.substitution);
    if (config.num_workers < ff_unknown_count(probe))
        throw InsufficientWorkers("P below the feedforward coefficient count " +
                                  std::to_string(ff_unknown_count(probe)));
    if (config.num_workers < bp_unknown_count(probe))
        throw InsufficientWorkers("P below the backprop coefficient count " +
                                  std::to_string(bp_unknown_count(probe)));

    std::vector<std::string> warnings;
    int min_dim = *std::min_element(config.dims.begin(), config.dims.end());
    if (static_cast<long long>(config.batch) * config.m * config.n >= min_dim)
        warnings.push_back("storage constraint B*K < N not met (B*K = " +
                           std::to_string(config.batch * config.m * config.n) + ", N = " +
                           std::to_string(min_dim) + ")");
    return warnings;
}

std::pair<CodedNet, OracleNet> init_network(const TrainConfig& config) {
    validate_config(config);
    CodeParams params = make_params(config.m, config.n, config.d1, config.d2, config.num_workers,
                                    config.substitution);
    CodedNet net;
    OracleNet oracle;
    for (int l = 1; l <= config.layers; ++l) {
        Rng rng(derive_seed(config.seed, 0x57, l));
        double scale = 1.0 / std::sqrt(static_cast<double>(config.dims[l - 1]));
        Mat w = Mat::gaussian(config.dims[l], config.dims[l - 1], rng, scale);

        LayerState state;
        state.layer_index = l;
        state.code = params;
        state.shards.reserve(params.P);
        for (int p = 0; p < params.P; ++p) state.shards.push_back(encode_weight_shard(w, params, p));
        net.layers.push_back(std::move(state));
        oracle.weights.push_back(std::move(w));
    }
    return {std::move(net), std::move(oracle)};
}

std::pair<Mat, Mat> data_for_iteration(const TrainConfig& config, int iteration) {
    Rng rx(derive_seed(config.seed, 0xDA, iteration));
    Mat x = Mat::gaussian(config.dims.front(), config.batch, rx);
    Rng ry(derive_seed(config.seed, 0x1A, iteration));
    Mat y = sigmoid(Mat::gaussian(config.dims.back(), config.batch, ry));
    return {std::move(x), std::move(y)};
}

Mat decode_layer_weights(const LayerState& state, DecodeMode mode) {
    const CodeParams& params = state.code;
    LinearCode code = code_from_points(params.eval_points(), params.m * params.n);
    std::vector<std::optional<Mat>> payloads;
    payloads.reserve(params.P);
    for (const Shard& s : state.shards) payloads.emplace_back(s.payload);
    BlockStreamResult stream = decode_block_stream(code, payloads, mode);
    if (stream.outcome.tag == DecodeTag::FAILURE)
        throw RollbackRequired("weight decode failed at layer " + std::to_string(state.layer_index));
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<std::size_t>(params.m) * params.n);
    for (int i = 0; i < params.m; ++i)
        for (int j = 0; j < params.n; ++j) blocks.push_back(stream.coefficients[weight_exponent(params, i, j)]);
    return reassemble(BlockGrid(params.m, params.n, std::move(blocks)));
}

namespace {

const FaultSpec* find_fault(const FaultPlan& plan, StepId step, int worker) {
    const FaultSpec* hit = nullptr;
    for (const auto& [w, spec] : plan.at(step))
        if (w == worker) hit = &spec;
    return hit;
}

// shared product stage of feedforward and backprop
StepResult coded_product_stage(const LayerState& state, const Mat& operand, bool feedforward,
                               const FaultPlan& plan, DecodeMode mode, double alpha, double beta,
                               std::uint64_t root_seed, int iteration) {
    const CodeParams& params = state.code;
    StepResult result;
    result.ledger.alpha = alpha;
    result.ledger.beta = beta;

    const StepId elementwise_step = feedforward ? StepId::C1 : StepId::C2;
    const StepId product_step = feedforward ? StepId::O1 : StepId::O2;

    std::vector<std::optional<Mat>> products(params.P);
    for (int p = 0; p < params.P; ++p) {
        Shard enc = feedforward ? encode_input_ff(operand, params, p) : encode_input_bp(operand, params, p);
        std::optional<Mat> encoded = std::move(enc.payload);
        // a fault in the elementwise stage corrupts this node's local copy of
        // the operand, an encoding fault the encoded vector; both surface in
        // the decode after the product
        for (StepId s : {elementwise_step, StepId::ENCODE}) {
            if (!encoded.has_value()) break;
            if (const FaultSpec* f = find_fault(plan, s, p))
                encoded = apply_fault(*encoded, *f, derive_seed(root_seed, static_cast<int>(s), p, iteration));
        }
        if (!encoded.has_value()) {
            products[p] = std::nullopt;
            continue;
        }
        std::optional<Mat> out = feedforward ? matmul(state.shards[p].payload, *encoded)
                                             : matmul(*encoded, state.shards[p].payload);
        if (const FaultSpec* f = find_fault(plan, product_step, p))
            out = apply_fault(*out, *f,
                              derive_seed(root_seed, static_cast<int>(product_step), p, iteration));
        products[p] = std::move(out);
    }

    long long per_worker = 0;
    for (const auto& prod : products)
        if (prod.has_value()) {
            per_worker = prod->size();
            break;
        }
    result.ledger.record_all_gather(params.P, per_worker);

    const int unknowns = feedforward ? ff_unknown_count(params) : bp_unknown_count(params);
    LinearCode code = code_from_points(params.eval_points(), unknowns);
    BlockStreamResult stream = decode_block_stream(code, products, mode);
    result.outcome = stream.outcome;
    if (stream.outcome.tag == DecodeTag::FAILURE) return result;

    ExponentMap map = feedforward ? target_exponents_ff(params) : target_exponents_bp(params);
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<std::size_t>(map.rows) * map.cols);
    for (int r = 0; r < map.rows; ++r)
        for (int c = 0; c < map.cols; ++c) blocks.push_back(stream.coefficients[map.at(r, c)]);
    result.decoded = reassemble(BlockGrid(map.rows, map.cols, std::move(blocks)));
    return result;
}

}  // namespace

StepResult feedforward_layer(const LayerState& state, const Mat& x, const FaultPlan& plan, DecodeMode mode,
                             double alpha, double beta, std::uint64_t root_seed, int iteration) {
    plan.validate();
    StepResult result =
        coded_product_stage(state, x, /*feedforward=*/true, plan, mode, alpha, beta, root_seed, iteration);
    if (result.decoded.has_value()) result.value = sigmoid(*result.decoded);
    return result;
}

StepResult backprop_layer(const LayerState& state, const Mat& delta_t, const Mat& x, const FaultPlan& plan,
                          DecodeMode mode, double alpha, double beta, std::uint64_t root_seed, int iteration) {
    plan.validate();
    StepResult result =
        coded_product_stage(state, delta_t, /*feedforward=*/false, plan, mode, alpha, beta, root_seed, iteration);
    if (result.decoded.has_value()) result.value = hadamard(*result.decoded, sigmoid_gain(transpose(x)));
    return result;
}

Mat last_layer_delta(const Mat& y_hat, const Mat& y, const Mat& s_l) {
    if (!y_hat.same_shape(y) || !y_hat.same_shape(s_l)) throw DimensionError("last_layer_delta shape mismatch");
    Mat delta(y_hat.rows(), y_hat.cols());
    for (std::size_t i = 0; i < delta.data().size(); ++i)
        delta.data()[i] = 2.0 * (y.data()[i] - y_hat.data()[i]) * sigmoid_gain(y_hat.data()[i]);
    return delta;
}

void coded_update(LayerState& state, const Mat& delta, const Mat& x, double eta, double lambda,
                  const FaultPlan& plan, std::uint64_t root_seed, int iteration) {
    plan.validate();
    const CodeParams& params = state.code;
    BlockGrid delta_parts = block_partition(delta, params.m, 1);
    BlockGrid x_parts = block_partition(x, params.n, 1);

    for (int p = 0; p < params.P; ++p) {
        // ascending-exponent encodings matching the weight polynomial
        std::vector<std::pair<const Mat*, int>> d_terms, x_terms;
        for (int i = 0; i < params.m; ++i) d_terms.emplace_back(&delta_parts.block(i, 0), i);
        for (int j = 0; j < params.n; ++j) x_terms.emplace_back(&x_parts.block(j, 0), j);
        Mat d_enc = eval_block_poly(d_terms, params.points_a[p]);
        Mat x_enc = eval_block_poly(x_terms, params.points_b[p]);

        Mat updated = (1.0 - eta * lambda) * state.shards[p].payload + eta * matmul(d_enc, transpose(x_enc));
        if (const FaultSpec* f = find_fault(plan, StepId::O3, p)) {
            if (f->kind == FaultSpec::Kind::ERASE)
                throw DimensionError("ERASE is not a valid update-stage fault");
            updated = *apply_fault(updated, *f, derive_seed(root_seed, static_cast<int>(StepId::O3), p, iteration));
            state.audit.push_back({ShardMutation::Kind::FAULT_INJECT, iteration, p});
        }
        state.shards[p].payload = std::move(updated);
        state.audit.push_back({ShardMutation::Kind::CODED_UPDATE, iteration, p});
    }
}

Verification verification_exchange(const std::vector<std::vector<double>>& copies, int sample_count,
                                   CostLedger& ledger) {
    const int p = static_cast<int>(copies.size());
    if (p == 0) throw DimensionError("verification needs at least one copy");
    const int len = static_cast<int>(copies.front().size());
    const int samples = std::min(sample_count, len);
    ledger.record_all_gather(p, samples);
    for (int node = 1; node < p; ++node) {
        if (static_cast<int>(copies[node].size()) != len) return Verification::ROLLBACK;
        for (int i = 0; i < samples; ++i)
            if (std::abs(copies[node][i] - copies[0][i]) > 1e-9) return Verification::ROLLBACK;
    }
    return Verification::AGREE;
}

Shard regenerate_shard(const LayerState& state, int p_bad, const std::vector<int>& correct_workers) {
    const CodeParams& params = state.code;
    const int k = params.m * params.n;
    if (static_cast<int>(correct_workers.size()) < k)
        throw RollbackRequired("regeneration needs " + std::to_string(k) + " correct shards, have " +
                               std::to_string(correct_workers.size()));
    std::vector<int> sources(correct_workers.begin(), correct_workers.begin() + k);
    const std::vector<double>& points = params.eval_points();

    // coefficients of the collapsed weight polynomial from k point values,
    // factored once and applied element by element
    Mat vand(k, k);
    for (int r = 0; r < k; ++r) {
        double pw = 1.0;
        for (int c = 0; c < k; ++c) {
            vand(r, c) = pw;
            pw *= points[sources[r]];
        }
    }
    Mat vand_inv = linalg::inverse(vand);

    const Mat& probe = state.shards[sources.front()].payload;
    Mat payload(probe.rows(), probe.cols());
    const double bad_point = points[p_bad];
    std::vector<double> values(k), coeffs(k);
    for (int pos = 0; pos < probe.rows() * probe.cols(); ++pos) {
        for (int r = 0; r < k; ++r) values[r] = state.shards[sources[r]].payload.data()[pos];
        for (int c = 0; c < k; ++c) {
            double acc = 0.0;
            for (int r = 0; r < k; ++r) acc += vand_inv(c, r) * values[r];
            coeffs[c] = acc;
        }
        double acc = 0.0;
        double pw = 1.0;
        for (int c = 0; c < k; ++c) {
            acc += coeffs[c] * pw;
            pw *= bad_point;
        }
        payload.data()[pos] = acc;
    }
    return Shard{p_bad, std::move(payload), ShardKind::WEIGHT};
}

Shard regenerate_shard(const LayerState& state, int p_bad) {
    std::vector<int> correct;
    for (int p = 0; p < state.code.P; ++p)
        if (p != p_bad) correct.push_back(p);
    return regenerate_shard(state, p_bad, correct);
}

namespace {

void regenerate_flagged(LayerState& state, const std::set<int>& flagged, int iteration) {
    if (flagged.empty()) return;
    std::vector<int> correct;
    for (int p = 0; p < state.code.P; ++p)
        if (!flagged.count(p)) correct.push_back(p);
    for (int p : flagged) {
        state.shards[p] = regenerate_shard(state, p, correct);
        state.audit.push_back({ShardMutation::Kind::REGENERATE, iteration, p});
    }
}

}  // namespace

ScheduleTracker::ScheduleTracker(std::vector<FaultEvent> events) {
    entries_.reserve(events.size());
    for (FaultEvent& e : events) entries_.push_back({e, false});
}

FaultPlan ScheduleTracker::plan_for(int iteration, int layer, bool backward, int error_model) {
    FaultPlan plan;
    for (Entry& entry : entries_) {
        if (entry.consumed || entry.event.iteration != iteration || entry.event.layer != layer) continue;
        StepId s = entry.event.step;
        const bool bp_step = s == StepId::O2 || s == StepId::C2 || s == StepId::O3;
        if (bp_step != backward) continue;
        if (s == StepId::DECODE) continue;  // handled at verification time
        plan.add(s, entry.event.worker, entry.event.spec);
        entry.consumed = true;
    }
    if (error_model == 1) {
        plan.model1 = true;
        plan.t1 = static_cast<int>(plan.at(StepId::O1).size());
        plan.t2 = static_cast<int>(plan.at(StepId::O2).size());
        plan.t3 = static_cast<int>(plan.at(StepId::O3).size());
    }
    return plan;
}

Verification ScheduleTracker::verify(int iteration, int layer, const Mat& decoded, int num_workers,
                                     std::uint64_t root_seed, CostLedger& ledger) {
    std::vector<std::vector<double>> copies(num_workers, decoded.data());
    for (Entry& entry : entries_) {
        if (entry.consumed || entry.event.iteration != iteration || entry.event.layer != layer) continue;
        if (entry.event.step != StepId::DECODE) continue;
        std::optional<Mat> corrupted = apply_fault(
            decoded, entry.event.spec,
            derive_seed(root_seed, static_cast<int>(StepId::DECODE), entry.event.worker, iteration));
        if (corrupted.has_value() && entry.event.worker >= 0 && entry.event.worker < num_workers)
            copies[entry.event.worker] = corrupted->data();
        entry.consumed = true;
    }
    return verification_exchange(copies, num_workers, ledger);
}

TrainResult train(const TrainConfig& config, std::vector<FaultEvent> schedule_in) {
    validate_config(config);
    auto [net, oracle] = init_network(config);
    (void)oracle;

    std::vector<ScheduleEntry> schedule;
    schedule.reserve(schedule_in.size());
    for (FaultEvent& e : schedule_in) {
        if (e.step == StepId::O3 && e.spec.kind == FaultSpec::Kind::ERASE)
            throw ConfigError("ERASE is not a valid update-stage fault");
        schedule.push_back({e, false});
    }

    if (config.error_model == 1) {
        // Model-1 plans restrict faults to the heavy steps with bounded
        // counts; errors after O1 must also absorb the previous iteration's
        // update-stage errors, so t_f >= t1 + t3 and t_b >= t2 per layer.
        auto [t_f, t_b] = tolerance_table(
            config.substitution == Substitution::U_EQ_VN ? Strategy::GPD_UVN : Strategy::GPD_VUM, config.m,
            config.n, config.d1, config.d2, config.num_workers, config.num_workers, config.num_workers, 1);
        std::map<std::tuple<int, int, StepId>, int> counts;
        for (const ScheduleEntry& e : schedule) {
            StepId s = e.event.step;
            if (s != StepId::O1 && s != StepId::O2 && s != StepId::O3)
                throw ConfigError(std::string("Model-1 schedules may only fault O1/O2/O3, got ") + step_name(s));
            ++counts[{e.event.iteration, e.event.layer, s}];
        }
        for (const auto& [key, _] : counts) {
            auto [it, layer, step] = key;
            (void)step;
            int ff_burden = counts[{it, layer, StepId::O1}] + counts[{it - 1, layer, StepId::O3}];
            int bp_burden = counts[{it, layer, StepId::O2}];
            if (ff_burden > t_f)
                throw ConfigError("iteration " + std::to_string(it) + " layer " + std::to_string(layer) +
                                  ": O1+O3 fault burden " + std::to_string(ff_burden) + " exceeds t_f = " +
                                  std::to_string(t_f));
            if (bp_burden > t_b)
                throw ConfigError("iteration " + std::to_string(it) + " layer " + std::to_string(layer) +
                                  ": O2 fault burden " + std::to_string(bp_burden) + " exceeds t_b = " +
                                  std::to_string(t_b));
        }
    }

    TrainResult result;
    const DecodeMode mode = config.decode_mode();
    const int l_count = config.layers;

    auto take_checkpoint = [&](int iteration) {
        Checkpoint cp;
        cp.iteration = static_cast<std::uint32_t>(iteration);
        cp.rng_seed = config.seed;
        for (const LayerState& layer : net.layers) cp.weights.push_back(decode_layer_weights(layer, mode));
        return cp;
    };
    Checkpoint last_checkpoint = take_checkpoint(0);

    auto restore = [&](const Checkpoint& cp, int at_iteration) {
        for (int l = 0; l < l_count; ++l) {
            LayerState& layer = net.layers[l];
            for (int p = 0; p < layer.code.P; ++p) {
                layer.shards[p] = encode_weight_shard(cp.weights[l], layer.code, p);
                layer.audit.push_back({ShardMutation::Kind::CHECKPOINT_RESTORE, at_iteration, p});
            }
        }
    };

    auto log_step = [&](int iteration, int layer, const char* step, const DecodeOutcome& outcome, double cost) {
        LogRow row;
        row.iteration = iteration;
        row.layer = layer;
        row.step = step;
        row.errors_corrected = 0;
        row.comm_cost = cost;
        switch (outcome.tag) {
            case DecodeTag::NO_ERRORS: row.outcome = "OK"; break;
            case DecodeTag::CORRECTED: row.outcome = "CORRECTED"; break;
            case DecodeTag::FAILURE: row.outcome = "ROLLBACK"; break;
        }
        if (outcome.error_locations.has_value()) {
            row.error_locations.assign(outcome.error_locations->begin(), outcome.error_locations->end());
            row.errors_corrected = static_cast<int>(row.error_locations.size());
        }
        result.total_comm_cost += cost;
        result.log.push_back(std::move(row));
    };

    int iteration = 1;
    int rollbacks_at_current = 0;
    while (iteration <= config.iterations) {
        bool rolled_back = false;
        auto [x_data, y_data] = data_for_iteration(config, iteration);

        std::vector<Mat> inputs(l_count + 1);
        inputs[0] = std::move(x_data);

        // feedforward sweep
        for (int l = 1; l <= l_count && !rolled_back; ++l) {
            FaultPlan plan = plan_for(schedule, iteration, l, /*backward=*/false, config);
            StepResult step = feedforward_layer(net.layers[l - 1], inputs[l - 1], plan, mode, config.alpha,
                                                config.beta, config.seed, iteration);
            if (step.outcome.tag == DecodeTag::FAILURE) {
                log_step(iteration, l, "O1", step.outcome, step.ledger.total());
                rolled_back = true;
                break;
            }
            double cost = step.ledger.total();
            if (config.error_model == 2) {
                CostLedger verify_ledger;
                verify_ledger.alpha = config.alpha;
                verify_ledger.beta = config.beta;
                if (run_verification(schedule, iteration, l, false, *step.decoded, config, verify_ledger) ==
                    Verification::ROLLBACK) {
                    DecodeOutcome failed;
                    failed.tag = DecodeTag::FAILURE;
                    log_step(iteration, l, "O1", failed, cost + verify_ledger.total());
                    rolled_back = true;
                    break;
                }
                cost += verify_ledger.total();
            }
            log_step(iteration, l, "O1", step.outcome, cost);
            if (step.outcome.tag == DecodeTag::CORRECTED)
                regenerate_flagged(net.layers[l - 1], *step.outcome.error_locations, iteration);
            inputs[l] = std::move(*step.value);
        }

        // backprop + update sweep
        if (!rolled_back) {
            Mat delta = last_layer_delta(inputs[l_count], y_data, inputs[l_count]);
            for (int l = l_count; l >= 1 && !rolled_back; --l) {
                FaultPlan plan = plan_for(schedule, iteration, l, /*backward=*/true, config);
                StepResult step = backprop_layer(net.layers[l - 1], transpose(delta), inputs[l - 1], plan, mode,
                                                 config.alpha, config.beta, config.seed, iteration);
                if (step.outcome.tag == DecodeTag::FAILURE) {
                    log_step(iteration, l, "O2", step.outcome, step.ledger.total());
                    rolled_back = true;
                    break;
                }
                double cost = step.ledger.total();
                if (config.error_model == 2) {
                    CostLedger verify_ledger;
                    verify_ledger.alpha = config.alpha;
                    verify_ledger.beta = config.beta;
                    if (run_verification(schedule, iteration, l, true, *step.decoded, config, verify_ledger) ==
                        Verification::ROLLBACK) {
                        DecodeOutcome failed;
                        failed.tag = DecodeTag::FAILURE;
                        log_step(iteration, l, "O2", failed, cost + verify_ledger.total());
                        rolled_back = true;
                        break;
                    }
                    cost += verify_ledger.total();
                }
                log_step(iteration, l, "O2", step.outcome, cost);
                if (step.outcome.tag == DecodeTag::CORRECTED)
                    regenerate_flagged(net.layers[l - 1], *step.outcome.error_locations, iteration);

                coded_update(net.layers[l - 1], delta, inputs[l - 1], config.eta, config.lambda, plan,
                             config.seed, iteration);
                DecodeOutcome ok;
                ok.tag = DecodeTag::NO_ERRORS;
                log_step(iteration, l, "O3", ok, 0.0);

                if (l > 1) delta = transpose(*step.value);
            }
        }

        if (rolled_back) {
            ++result.rollbacks;
            if (++rollbacks_at_current > 8)
                throw RollbackRequired("iteration " + std::to_string(iteration) +
                                       " keeps failing after checkpoint restores");
            restore(last_checkpoint, iteration);
            iteration = static_cast<int>(last_checkpoint.iteration) + 1;
            continue;
        }

        rollbacks_at_current = 0;
        if (config.checkpoint_interval > 0 && iteration % config.checkpoint_interval == 0)
            last_checkpoint = take_checkpoint(iteration);
        ++iteration;
    }

    result.net = std::move(net);
    return result;
}

std::pair<int, int> tolerance_table(Strategy strategy, int m, int n, int d1, int d2, int p, int p_f, int p_b,
                                    int model) {
    if (m < 1 || n < 1 || d1 < 1 || d2 < 1) throw DimensionError("tolerance_table parameters must be positive");
    if (model != 1 && model != 2) throw DimensionError("model must be 1 or 2");
    const int mn = m * n;
    auto floor_div = [](int num, int den) {
        // floor for possibly negative numerators
        int q = num / den;
        if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
        return q;
    };
    switch (strategy) {
        case Strategy::GPD_UVN:
            if (model == 1)
                return {floor_div(p - mn * d1 - n + 1, 2), floor_div(p - (d2 + 1) * mn + n, 2)};
            return {p - mn * d1 - n, p - (d2 + 1) * mn + n - 1};
        case Strategy::GPD_VUM:
            if (model == 1)
                return {floor_div(p - (d1 + 1) * mn + m, 2), floor_div(p - mn * d2 - m + 1, 2)};
            return {p - (d1 + 1) * mn + m - 1, p - mn * d2 - m};
        case Strategy::MDS:
            if (p_f % n != 0) throw DimensionError("MDS requires n | P_f");
            if (p_b % m != 0) throw DimensionError("MDS requires m | P_b");
            if (model == 1) return {floor_div(p_f - mn, 2 * n), floor_div(p_b - mn, 2 * m)};
            return {floor_div(p_f - mn - n, n), floor_div(p_b - mn - m, m)};
        case Strategy::REP: {
            if (p % mn != 0) throw DimensionError("replication requires mn | P");
            if (model == 1) {
                int t = floor_div(p - mn, 2 * mn);
                return {t, t};
            }
            int t = p / mn - 2;
            return {t, t};
        }
    }
    throw DimensionError("unknown strategy");
}

}  // namespace codedc
