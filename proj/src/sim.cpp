#include "codedc/sim.hpp"

#include <cmath>

#include "codedc/rng.hpp"

namespace codedc {

const char* step_name(StepId step) {
    switch (step) {
        case StepId::O1: return "O1";
        case StepId::O2: return "O2";
        case StepId::O3: return "O3";
        case StepId::C1: return "C1";
        case StepId::C2: return "C2";
        case StepId::ENCODE: return "ENCODE";
        case StepId::DECODE: return "DECODE";
    }
    return "?";
}

std::optional<StepId> step_from_name(const std::string& name) {
    if (name == "O1") return StepId::O1;
    if (name == "O2") return StepId::O2;
    if (name == "O3") return StepId::O3;
    if (name == "C1") return StepId::C1;
    if (name == "C2") return StepId::C2;
    if (name == "ENCODE") return StepId::ENCODE;
    if (name == "DECODE") return StepId::DECODE;
    return std::nullopt;
}

FaultPlan FaultPlan::model1_plan(int t1, int t2, int t3, std::vector<std::tuple<StepId, int, FaultSpec>> entries) {
    FaultPlan plan;
    plan.model1 = true;
    plan.t1 = t1;
    plan.t2 = t2;
    plan.t3 = t3;
    for (auto& [step, worker, spec] : entries) plan.add(step, worker, spec);
    plan.validate();
    return plan;
}

void FaultPlan::validate() const {
    if (!model1) return;
    for (const auto& [step, list] : faults) {
        if (step != StepId::O1 && step != StepId::O2 && step != StepId::O3)
            throw DimensionError(std::string("Model-1 plans may only fault O1/O2/O3, got ") + step_name(step));
        int budget = step == StepId::O1 ? t1 : step == StepId::O2 ? t2 : t3;
        if (static_cast<int>(list.size()) > budget)
            throw DimensionError(std::string("Model-1 fault count at ") + step_name(step) + " exceeds budget " +
                                 std::to_string(budget));
    }
}

std::optional<Mat> apply_fault(const Mat& value, const FaultSpec& spec, std::uint64_t stream_seed) {
    switch (spec.kind) {
        case FaultSpec::Kind::ERASE:
            return std::nullopt;
        case FaultSpec::Kind::GAUSSIAN: {
            Mat out = value;
            Rng rng(stream_seed);
            for (double& v : out.data()) v += spec.sigma * rng.normal();
            return out;
        }
        case FaultSpec::Kind::ADVERSARIAL_VALUE: {
            Mat out(value.rows(), value.cols());
            Rng rng(spec.seed);
            for (double& v : out.data()) v = rng.uniform(-1e3, 1e3);
            return out;
        }
    }
    return std::nullopt;
}

double broadcast_cost(double alpha, double beta, int p, long long n) {
    if (p < 1) throw DimensionError("broadcast needs P >= 1");
    return alpha * std::log2(static_cast<double>(p)) + beta * static_cast<double>(n);
}

double all_gather_cost(double alpha, double beta, int p, long long n) {
    if (p < 1) throw DimensionError("all-gather needs P >= 1");
    return alpha * std::log2(static_cast<double>(p)) + 2.0 * beta * static_cast<double>(p) * static_cast<double>(n);
}

double point_to_point_cost(double alpha, double beta, long long n) {
    return alpha + beta * static_cast<double>(n);
}

double CostLedger::record_broadcast(int p, long long n) {
    double c = broadcast_cost(alpha, beta, p, n);
    events.push_back({CostEvent::Kind::BROADCAST, p, n, c});
    return c;
}

double CostLedger::record_all_gather(int p, long long n) {
    double c = all_gather_cost(alpha, beta, p, n);
    events.push_back({CostEvent::Kind::ALL_GATHER, p, n, c});
    return c;
}

double CostLedger::record_point_to_point(long long n) {
    double c = point_to_point_cost(alpha, beta, n);
    events.push_back({CostEvent::Kind::POINT_TO_POINT, 0, n, c});
    return c;
}

double CostLedger::total() const {
    double t = 0.0;
    for (const CostEvent& e : events) t += e.cost;
    return t;
}

void CostLedger::append(const CostLedger& other) {
    events.insert(events.end(), other.events.begin(), other.events.end());
}

double worker_comm_total(const CodeParams& params, long long n1, long long b) {
    const double threshold = params.m * params.n * params.d1 + params.n - 1;
    return threshold * static_cast<double>(n1) * static_cast<double>(b) /
           (static_cast<double>(params.m) * params.d1);
}

namespace {

// fault lookup for one worker at one step; later entries win
const FaultSpec* find_fault(const FaultPlan& plan, StepId step, int worker) {
    const FaultSpec* hit = nullptr;
    for (const auto& [w, spec] : plan.at(step))
        if (w == worker) hit = &spec;
    return hit;
}

}  // namespace

CodedProductResult coded_matmul(const Mat& w, const Mat& x, const CodeParams& params, const FaultPlan& plan,
                                DecodeMode mode, double alpha, double beta, std::uint64_t root_seed, int iteration) {
    plan.validate();
    CodedProductResult result;
    result.ledger.alpha = alpha;
    result.ledger.beta = beta;

    std::vector<std::optional<Mat>> products(params.P);
    for (int p = 0; p < params.P; ++p) {
        Shard w_shard = encode_weight_shard(w, params, p);
        Shard x_shard = encode_input_ff(x, params, p);

        std::optional<Mat> encoded = x_shard.payload;
        if (const FaultSpec* f = find_fault(plan, StepId::ENCODE, p))
            encoded = apply_fault(*encoded, *f, derive_seed(root_seed, static_cast<int>(StepId::ENCODE), p, iteration));
        if (!encoded.has_value()) {
            products[p] = std::nullopt;  // worker lost its input: treat as erased
            continue;
        }

        std::optional<Mat> out = matmul(w_shard.payload, *encoded);
        if (const FaultSpec* f = find_fault(plan, StepId::O1, p))
            out = apply_fault(*out, *f, derive_seed(root_seed, static_cast<int>(StepId::O1), p, iteration));
        products[p] = std::move(out);
    }

    result.ledger.record_all_gather(params.P,
                                    static_cast<long long>(w.rows() / params.m) * (x.cols() / params.d1));

    LinearCode code = code_from_points(params.eval_points(), ff_unknown_count(params));
    BlockStreamResult stream = decode_block_stream(code, products, mode);
    result.outcome = stream.outcome;
    if (stream.outcome.tag == DecodeTag::FAILURE) return result;

    ExponentMap map = target_exponents_ff(params);
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<std::size_t>(params.m) * params.d1);
    for (int i = 0; i < params.m; ++i)
        for (int k = 0; k < params.d1; ++k) blocks.push_back(stream.coefficients[map.at(i, k)]);
    result.product = reassemble(BlockGrid(params.m, params.d1, std::move(blocks)));
    return result;
}

CodedProductResult coded_matvec(const Mat& w, const Mat& x, const CodeParams& params, const FaultPlan& plan,
                                DecodeMode mode, double alpha, double beta, std::uint64_t root_seed, int iteration) {
    if (x.cols() != 1) throw DimensionError("coded_matvec expects a column vector");
    if (params.d1 != 1) throw DimensionError("coded_matvec requires d1 = 1");
    return coded_matmul(w, x, params, plan, mode, alpha, beta, root_seed, iteration);
}

}  // namespace codedc
