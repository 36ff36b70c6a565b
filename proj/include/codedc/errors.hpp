#pragma once

#include <stdexcept>
#include <string>

namespace codedc {

// Shape or divisibility violation; the message names the offending axis.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Worker count below the recovery threshold of the requested code.
struct InsufficientWorkers : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation points collide; no MDS code can be built on them.
struct DegenerateCode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fewer surviving evaluations than unknown coefficients.
struct InsufficientEvaluations : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample sparsity hit 0 or 1 exactly; KL divergence undefined.
struct SparsitySingularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Protocol cannot continue without reverting to the last checkpoint.
struct RollbackRequired : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed config or schedule file; carries the 1-based line number
// (0 when the problem is not tied to a specific line).
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace codedc
