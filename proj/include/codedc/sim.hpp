#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codedc/decoder.hpp"
#include "codedc/gpd.hpp"
#include "codedc/mat.hpp"

namespace codedc {

// Protocol steps that faults can target. O1/O2/O3 are the heavy products and
// the update; C1/C2 the elementwise stages; ENCODE/DECODE the coding stages.
enum class StepId { O1, O2, O3, C1, C2, ENCODE, DECODE };

const char* step_name(StepId step);
std::optional<StepId> step_from_name(const std::string& name);

struct FaultSpec {
    enum class Kind { ERASE, GAUSSIAN, ADVERSARIAL_VALUE };
    Kind kind = Kind::ERASE;
    double sigma = 0.0;     // GAUSSIAN
    std::uint64_t seed = 0;  // ADVERSARIAL_VALUE

    static FaultSpec erase() { return {Kind::ERASE, 0.0, 0}; }
    static FaultSpec gaussian(double sigma) { return {Kind::GAUSSIAN, sigma, 0}; }
    static FaultSpec adversarial(std::uint64_t seed) { return {Kind::ADVERSARIAL_VALUE, 0.0, seed}; }
};

// Which workers get hit at which step. Model-1 plans are restricted to the
// heavy steps O1/O2/O3 with per-step budgets (t1, t2, t3); Model-2 plans may
// target any step with no count bound.
struct FaultPlan {
    std::map<StepId, std::vector<std::pair<int, FaultSpec>>> faults;
    bool model1 = false;
    int t1 = 0;
    int t2 = 0;
    int t3 = 0;

    void add(StepId step, int worker, FaultSpec spec) { faults[step].emplace_back(worker, spec); }

    const std::vector<std::pair<int, FaultSpec>>& at(StepId step) const {
        static const std::vector<std::pair<int, FaultSpec>> kEmpty;
        auto it = faults.find(step);
        return it == faults.end() ? kEmpty : it->second;
    }

    // Builds a Model-1 plan and enforces its restrictions.
    static FaultPlan model1_plan(int t1, int t2, int t3,
                                 std::vector<std::tuple<StepId, int, FaultSpec>> entries);

    void validate() const;
};

// GAUSSIAN adds iid N(0, sigma^2) to every entry; ADVERSARIAL_VALUE replaces
// every entry from the spec's own seeded generator; ERASE yields nullopt.
// stream_seed individualizes Gaussian draws per (worker, step, iteration).
std::optional<Mat> apply_fault(const Mat& value, const FaultSpec& spec, std::uint64_t stream_seed);

struct CostEvent {
    enum class Kind { BROADCAST, ALL_GATHER, POINT_TO_POINT };
    Kind kind;
    int p;
    long long n;
    double cost;
};

double broadcast_cost(double alpha, double beta, int p, long long n);
double all_gather_cost(double alpha, double beta, int p, long long n);
double point_to_point_cost(double alpha, double beta, long long n);

// Accumulates communication events priced by the alpha/beta model.
struct CostLedger {
    double alpha = 1.0;
    double beta = 1.0;
    std::vector<CostEvent> events;

    double record_broadcast(int p, long long n);
    double record_all_gather(int p, long long n);
    double record_point_to_point(long long n);
    double total() const;
    void append(const CostLedger& other);
};

// Decode-side gather volume of one coded product, (mnd1+n-1) * N1 B / (m d1).
double worker_comm_total(const CodeParams& params, long long n1, long long b);

struct CodedProductResult {
    std::optional<Mat> product;
    DecodeOutcome outcome;
    CostLedger ledger;
};

// Runs the full coded product on the simulated pool: encode per worker,
// per-worker multiply with faults applied per plan, all-gather, block-stream
// decode, reassembly. On FAILURE the product is absent.
CodedProductResult coded_matmul(const Mat& w, const Mat& x, const CodeParams& params, const FaultPlan& plan,
                                DecodeMode mode, double alpha = 1.0, double beta = 1.0,
                                std::uint64_t root_seed = 0, int iteration = 0);

// Matrix-vector specialization (d1 = 1, threshold mn+n-1).
CodedProductResult coded_matvec(const Mat& w, const Mat& x, const CodeParams& params, const FaultPlan& plan,
                                DecodeMode mode, double alpha = 1.0, double beta = 1.0,
                                std::uint64_t root_seed = 0, int iteration = 0);

}  // namespace codedc
