#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codedc/decoder.hpp"
#include "codedc/gpd.hpp"
#include "codedc/mat.hpp"
#include "codedc/sim.hpp"

namespace codedc {

double sigmoid(double u);
// g with g(f(u)) = f'(u) for the sigmoid: g(y) = y (1 - y)
double sigmoid_gain(double y);
Mat sigmoid(const Mat& m);
Mat sigmoid_gain(const Mat& m);

struct TrainConfig {
    int layers = 1;
    std::vector<int> dims;  // N_0 .. N_L
    int batch = 1;
    double eta = 0.1;
    double lambda = 0.0;
    int m = 1;
    int n = 1;
    int d1 = 1;
    int d2 = 1;
    int num_workers = 1;
    Substitution substitution = Substitution::U_EQ_VN;
    int iterations = 1;
    int checkpoint_interval = 10;
    int error_model = 2;  // 1: adversarial, 2: probabilistic
    std::uint64_t seed = 0;
    double alpha = 1.0;
    double beta = 1.0;
    // sparse-autoencoder extras
    double beta_kl = 0.0;
    double rho = 0.1;

    DecodeMode decode_mode() const {
        return error_model == 1 ? DecodeMode::ADVERSARIAL : DecodeMode::PROBABILISTIC;
    }
};

// Throws on shape/divisibility/threshold violations; returns soft warnings
// (the B*K < N storage constraint is warned about, not enforced).
std::vector<std::string> validate_config(const TrainConfig& config);

struct ShardMutation {
    enum class Kind { CODED_UPDATE, REGENERATE, FAULT_INJECT, CHECKPOINT_RESTORE };
    Kind kind;
    int iteration;
    int worker;
};

// Per-layer collection of the P weight shards plus the code maintaining them.
struct LayerState {
    int layer_index = 0;  // 1-based
    CodeParams code;
    std::vector<Shard> shards;
    std::vector<ShardMutation> audit;
};

struct OracleNet {
    std::vector<Mat> weights;  // weights[l] is W^{l+1}, N_{l+1} x N_l
};

struct CodedNet {
    std::vector<LayerState> layers;
};

// Gaussian init (scale 1/sqrt(N_{l-1})) of the oracle weights; shards encode
// them once per worker. The oracle copy exists for equivalence tests only.
std::pair<CodedNet, OracleNet> init_network(const TrainConfig& config);

// Deterministic per-iteration synthetic batch (inputs, targets); the coded
// run and the uncoded oracle consume identical draws.
std::pair<Mat, Mat> data_for_iteration(const TrainConfig& config, int iteration);

// Recovers the layer weight matrix from the shards through the block-stream
// decoder of the weight polynomial (Q = mn), so latent shard corruption is
// caught; throws RollbackRequired on decode failure.
Mat decode_layer_weights(const LayerState& state, DecodeMode mode = DecodeMode::PROBABILISTIC);

struct StepResult {
    std::optional<Mat> value;    // f(s) for feedforward, previous delta^T for backprop
    std::optional<Mat> decoded;  // s, resp. c^T, before the elementwise stage
    DecodeOutcome outcome;
    CostLedger ledger;
};

// One coded feedforward product at a layer: encode the replicated input at
// every node (C1/ENCODE faults land there), multiply by the weight shard
// (O1 faults land on the product), all-gather, decode, apply the sigmoid.
StepResult feedforward_layer(const LayerState& state, const Mat& x, const FaultPlan& plan, DecodeMode mode,
                             double alpha = 1.0, double beta = 1.0, std::uint64_t root_seed = 0,
                             int iteration = 0);

// One coded backprop product: c^T = delta^T W decoded the same way, then
// previous delta^T = c^T o g(x^T).
StepResult backprop_layer(const LayerState& state, const Mat& delta_t, const Mat& x, const FaultPlan& plan,
                          DecodeMode mode, double alpha = 1.0, double beta = 1.0, std::uint64_t root_seed = 0,
                          int iteration = 0);

// delta^L = 2 (y - y_hat) o f'(s^L), with f'(s^L) evaluated as g(y_hat).
Mat last_layer_delta(const Mat& y_hat, const Mat& y, const Mat& s_l);

// In-place structure-preserving shard update
// W~_p <- (1 - eta lambda) W~_p + eta (sum_i delta_i a_p^i)(sum_j x_j b_p^j)^T,
// summed over the batch columns. O3 faults corrupt the stored shard and stay
// latent until the next O1 decode at this layer.
void coded_update(LayerState& state, const Mat& delta, const Mat& x, double eta, double lambda,
                  const FaultPlan& plan, std::uint64_t root_seed = 0, int iteration = 0);

enum class Verification { AGREE, ROLLBACK };

// All nodes exchange their decoded values at `sample_count` pre-decided
// indices (the first positions); any disagreement beyond 1e-9 forces a
// rollback. Records one all-gather of sample_count values per node.
Verification verification_exchange(const std::vector<std::vector<double>>& copies, int sample_count,
                                   CostLedger& ledger);

// Rebuilds worker p_bad's weight shard by interpolating mn correct shards
// element-streamed and re-evaluating at its point. Throws RollbackRequired
// when fewer than mn correct shards are available.
Shard regenerate_shard(const LayerState& state, int p_bad, const std::vector<int>& correct_workers);
Shard regenerate_shard(const LayerState& state, int p_bad);

struct FaultEvent {
    int iteration = 1;
    int layer = 1;
    StepId step = StepId::O1;
    int worker = 0;
    FaultSpec spec;
};

struct LogRow {
    int iteration;
    int layer;
    std::string step;
    std::string outcome;  // OK | CORRECTED | ROLLBACK
    int errors_corrected;
    std::vector<int> error_locations;
    double comm_cost;
};

// Hands each (iteration, layer) its scheduled faults exactly once; consumed
// events do not fire again after a rollback replay (soft errors are transient
// events in time, not properties of the logical iteration).
class ScheduleTracker {
  public:
    explicit ScheduleTracker(std::vector<FaultEvent> events);

    // Unconsumed faults of this (iteration, layer) and sweep direction.
    // ENCODE faults land in the feedforward stage; use C2 to corrupt a
    // backprop operand. DECODE faults are left for verify().
    FaultPlan plan_for(int iteration, int layer, bool backward, int error_model);

    // Simulates the per-node redundant decode and the exchange of pre-decided
    // values; scheduled DECODE faults corrupt single nodes' copies here.
    Verification verify(int iteration, int layer, const Mat& decoded, int num_workers, std::uint64_t root_seed,
                        CostLedger& ledger);

  private:
    struct Entry {
        FaultEvent event;
        bool consumed = false;
    };
    std::vector<Entry> entries_;
};

struct Checkpoint {
    std::uint32_t iteration = 0;
    std::vector<Mat> weights;
    std::uint64_t rng_seed = 0;
};

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

struct TrainResult {
    CodedNet net;
    std::vector<LogRow> log;
    int rollbacks = 0;
    double total_comm_cost = 0.0;
};

// Full protocol: T iterations of coded feedforward, last-layer delta, coded
// backprop and update, verification (Model 2), regeneration of flagged
// shards, checkpoint every checkpoint_interval iterations and rollback +
// replay on decode failure. Fault events fire once and are consumed.
TrainResult train(const TrainConfig& config, std::vector<FaultEvent> schedule);

// Plain SGD per the uncoded recursions; the ground truth for equivalence.
void oracle_train_iteration(OracleNet& net, const Mat& x, const Mat& y, double eta, double lambda);
OracleNet uncoded_reference_train(const TrainConfig& config);

// ---- tolerance tables ----

enum class Strategy { GPD_UVN, GPD_VUM, MDS, REP };

// Exact error-tolerance pairs (t_f, t_b) under a fixed node count, floors
// applied. REP requires mn | P; MDS uses the (P_f/n, m) and (P_b/m, n) codes.
std::pair<int, int> tolerance_table(Strategy strategy, int m, int n, int d1, int d2, int p, int p_f, int p_b,
                                    int model);

// ---- baselines ----

// P/mn replicas of an m x n block grid; node (replica r, row i, col j) has
// id r*mn + i*n + j.
struct ReplicationState {
    int m = 1;
    int n = 1;
    int replicas = 1;
    std::vector<std::vector<Mat>> blocks;  // [replica][i*n+j]
};

ReplicationState make_replication_state(const Mat& w, int m, int n, int p);

struct BaselineStepResult {
    std::optional<Mat> s;
    std::optional<Mat> c_t;
    DecodeTag ff_tag = DecodeTag::NO_ERRORS;
    DecodeTag bp_tag = DecodeTag::NO_ERRORS;
    std::set<int> ff_locations;
    std::set<int> bp_locations;
};

// One layer step (feedforward product, backprop product, update) under the
// replication strategy: majority voting under Model 1, match-two under
// Model 2.
BaselineStepResult replication_train_step(ReplicationState& state, const Mat& x, const Mat& delta_t, double eta,
                                          double lambda, const FaultPlan& plan, int model,
                                          std::uint64_t root_seed = 0, int iteration = 0);

// Systematic-MDS baseline: W encoded as (Gr^T (x) I) W (Gc (x) I) over a
// (P_f/n) x (P_b/m) node grid; feedforward is active on the first n block
// columns (node id r*n + j), backprop on the first m block rows (node id
// i*(P_b/m) + c).
struct MdsState {
    int m = 1;
    int n = 1;
    int p_f = 0;
    int p_b = 0;
    Mat row_gen_t;  // (P_f/n) x m, systematic
    Mat col_gen;    // n x (P_b/m), systematic
    std::vector<std::vector<Mat>> blocks;  // [r][c] encoded blocks
    LinearCode row_code;
    LinearCode col_code;
};

MdsState make_mds_state(const Mat& w, int m, int n, int p_f, int p_b);

BaselineStepResult mds_train_step(MdsState& state, const Mat& x, const Mat& delta_t, double eta, double lambda,
                                  const FaultPlan& plan, int model, std::uint64_t root_seed = 0,
                                  int iteration = 0);

// ---- sparse autoencoder ----

// rho_hat_i = row mean of the hidden activations; throws SparsitySingularity
// when a mean hits 0 or 1 exactly.
std::vector<double> rho_hat(const Mat& y1);

// Column-constant N1 x B matrix of beta_kl * Q(rho_hat_i) with
// Q(r) = -rho/r + (1-rho)/(1-r).
Mat q_rho(double rho, const std::vector<double>& rho_hat_values, double beta_kl, int cols);

// Delta_auto = (C2 - q) o f'(S1), f' evaluated as g(f(S1)).
Mat delta_auto(const Mat& c2, const Mat& q, const Mat& s1);

// Full autoencoder loss over one batch: mean squared reconstruction error
// + (lambda/2)(|W1|_F^2 + |W2|_F^2) + beta_kl * sum_i KL(rho || rho_hat_i).
double autoencoder_loss(const Mat& w1, const Mat& w2, const Mat& x, double lambda, double beta_kl, double rho);

// Analytic dE/dW1 = -(1/B) Delta_auto X^T + lambda W1; checked against
// central finite differences of autoencoder_loss.
Mat autoencoder_grad_w1(const Mat& w1, const Mat& w2, const Mat& x, double lambda, double beta_kl, double rho);

struct AutoencoderOracle {
    Mat w1;
    Mat w2;
};

void autoencoder_oracle_iteration(AutoencoderOracle& net, const Mat& x, double eta, double lambda,
                                  double beta_kl, double rho);
AutoencoderOracle uncoded_autoencoder_train(const TrainConfig& config);

// Coded 2-layer reconstruction training: layer-2 update is the regularized
// coded update, layer-1 backprop substitutes Delta_auto.
TrainResult autoencoder_train(const TrainConfig& config, std::vector<FaultEvent> schedule);

}  // namespace codedc
