#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "codedc/mat.hpp"

namespace codedc {

// Syndrome entries below tau_zero * |z|_inf count as "no errors detected";
// a support is accepted when its syndrome fit residual is below
// tau_fit * |Hz|_2. Chosen so Chebyshev-point Vandermonde systems up to
// P ~ 30 pass cleanly while sigma >= 1e-3 corruptions never do.
inline constexpr double kTauZero = 1e-8;
inline constexpr double kTauFit = 1e-8;

// (P, Q) real-number MDS code. generator_T row p holds the encoding weights
// of position p; parity_check rows form an orthonormal basis of the left
// null space of generator_T.
struct LinearCode {
    int P = 0;
    int Q = 0;
    Mat generator_T;   // P x Q
    Mat parity_check;  // (P-Q) x P
    std::vector<double> points;  // evaluation points when Vandermonde; empty otherwise
};

// Vandermonde code: generator_T row p = [1, b_p, ..., b_p^{Q-1}].
LinearCode code_from_points(const std::vector<double>& points, int q);

// Generic MDS code from an explicit P x Q generator transpose (used by the
// systematic-MDS baseline).
LinearCode code_from_generator(const Mat& generator_t);

// parity_check * z
std::vector<double> syndrome(const LinearCode& code, const std::vector<double>& z);

int adversarial_capacity(int p, int q);
int probabilistic_capacity(int p, int q);

enum class DecodeTag { NO_ERRORS, CORRECTED, FAILURE };
enum class DecodeMode { ADVERSARIAL, PROBABILISTIC };

struct DecodeOutcome {
    DecodeTag tag = DecodeTag::FAILURE;
    std::optional<std::vector<double>> message;       // q_hat
    std::optional<std::vector<double>> error_vector;  // e_hat
    std::optional<std::set<int>> error_locations;
};

// Minimal-support syndrome decoding: searches error supports in ascending
// cardinality (lexicographic within a cardinality) up to the mode's capacity,
// accepts the first support whose syndrome fit residual passes, then
// re-derives the message from the remaining rows and re-checks consistency.
DecodeOutcome decode(const LinearCode& code, const std::vector<double>& z, DecodeMode mode);

// Same decoding with the per-support orthonormal bases precomputed once;
// reuse this across many codewords of the same code.
class ErrorDecoder {
  public:
    ErrorDecoder(LinearCode code, DecodeMode mode);

    DecodeOutcome decode(const std::vector<double>& z) const;

    const LinearCode& code() const { return code_; }
    int capacity() const { return capacity_; }

  private:
    struct SupportEntry {
        std::vector<int> indices;
        Mat range_basis;  // orthonormal basis of range(H_support), (P-Q) x t
    };

    LinearCode code_;
    DecodeMode mode_;
    int capacity_;
    std::vector<SupportEntry> supports_;
};

// Erasure-only interpolation: solves the Vandermonde (or generator) subsystem
// on the received rows. Throws InsufficientEvaluations when fewer than Q rows
// survive.
std::vector<double> interpolate_erasures(const LinearCode& code, const std::map<int, double>& received);

struct BlockStreamResult {
    // coefficient blocks, index = polynomial exponent 0..Q-1
    std::vector<Mat> coefficients;
    DecodeOutcome outcome;  // aggregated over all scalar positions
};

// Vectorized decode across every scalar position of the shard payloads.
// shards[p] == nullopt marks an erasure. A worker is flagged erroneous if it
// is flagged at any position; the union support must satisfy the capacity
// bound of the punctured code or the whole decode fails.
BlockStreamResult decode_block_stream(const LinearCode& code, const std::vector<std::optional<Mat>>& shards,
                                      DecodeMode mode);

}  // namespace codedc
