#include "codedc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "codedc/linalg.hpp"

namespace codedc {

namespace {

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm_2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Mat select_rows(const Mat& a, const std::vector<int>& rows) {
    Mat out(static_cast<int>(rows.size()), a.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < a.cols(); ++c) out(static_cast<int>(r), c) = a(rows[r], c);
    return out;
}

Mat select_cols(const Mat& a, const std::vector<int>& cols) {
    Mat out(a.rows(), static_cast<int>(cols.size()));
    for (int r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, static_cast<int>(c)) = a(r, cols[c]);
    return out;
}

// next lexicographic t-combination of 0..limit-1; false when exhausted
bool next_combination(std::vector<int>& comb, int limit) {
    const int t = static_cast<int>(comb.size());
    for (int i = t - 1; i >= 0; --i) {
        if (comb[i] < limit - (t - i)) {
            ++comb[i];
            for (int j = i + 1; j < t; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

LinearCode code_from_points(const std::vector<double>& points, int q) {
    const int p = static_cast<int>(points.size());
    if (q < 1 || q > p) throw DimensionError("need 1 <= Q <= P");
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (points[i] == points[j])
                throw DegenerateCode("duplicate evaluation points at " + std::to_string(i) + " and " +
                                     std::to_string(j));
    Mat gen(p, q);
    for (int r = 0; r < p; ++r) {
        double pw = 1.0;
        for (int c = 0; c < q; ++c) {
            gen(r, c) = pw;
            pw *= points[r];
        }
    }
    LinearCode code;
    code.P = p;
    code.Q = q;
    code.parity_check = linalg::left_null_space(gen);
    code.generator_T = std::move(gen);
    code.points = points;
    return code;
}

LinearCode code_from_generator(const Mat& generator_t) {
    LinearCode code;
    code.P = generator_t.rows();
    code.Q = generator_t.cols();
    if (code.Q > code.P) throw DimensionError("generator must have at least as many rows as columns");
    code.parity_check = linalg::left_null_space(generator_t);
    code.generator_T = generator_t;
    return code;
}

std::vector<double> syndrome(const LinearCode& code, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != code.P) throw DimensionError("codeword length must equal P");
    const Mat& h = code.parity_check;
    std::vector<double> s(h.rows(), 0.0);
    for (int r = 0; r < h.rows(); ++r) {
        double acc = 0.0;
        for (int c = 0; c < h.cols(); ++c) acc += h(r, c) * z[c];
        s[r] = acc;
    }
    return s;
}

int adversarial_capacity(int p, int q) {
    if (q > p) throw DimensionError("need Q <= P");
    return (p - q) / 2;
}

int probabilistic_capacity(int p, int q) {
    if (q > p) throw DimensionError("need Q <= P");
    return std::max(p - q - 1, 0);
}

ErrorDecoder::ErrorDecoder(LinearCode code, DecodeMode mode) : code_(std::move(code)), mode_(mode) {
    capacity_ = mode == DecodeMode::ADVERSARIAL ? adversarial_capacity(code_.P, code_.Q)
                                                : probabilistic_capacity(code_.P, code_.Q);
    for (int t = 1; t <= capacity_; ++t) {
        std::vector<int> comb(t);
        for (int i = 0; i < t; ++i) comb[i] = i;
        while (true) {
            SupportEntry entry;
            entry.indices = comb;
            entry.range_basis = linalg::orthonormal_range(select_cols(code_.parity_check, comb));
            supports_.push_back(std::move(entry));
            if (!next_combination(comb, code_.P)) break;
        }
    }
}

DecodeOutcome ErrorDecoder::decode(const std::vector<double>& z) const {
    if (static_cast<int>(z.size()) != code_.P) throw DimensionError("codeword length must equal P");
    const double z_scale = norm_inf(z);
    std::vector<double> s = syndrome(code_, z);

    DecodeOutcome out;
    if (norm_inf(s) <= kTauZero * z_scale) {
        out.tag = DecodeTag::NO_ERRORS;
        out.message = linalg::lstsq(code_.generator_T, z);
        out.error_vector = std::vector<double>(code_.P, 0.0);
        out.error_locations = std::set<int>{};
        return out;
    }

    const double s_norm = norm_2(s);
    const double consistency_tol = 1e-7 * std::max(1.0, z_scale);
    for (const SupportEntry& entry : supports_) {
        // distance from Hz to range(H_support), via the orthonormal basis
        double proj_sq = 0.0;
        const Mat& u = entry.range_basis;
        for (int c = 0; c < u.cols(); ++c) {
            double dot = 0.0;
            for (int r = 0; r < u.rows(); ++r) dot += u(r, c) * s[r];
            proj_sq += dot * dot;
        }
        double resid_sq = std::max(s_norm * s_norm - proj_sq, 0.0);
        if (std::sqrt(resid_sq) > kTauFit * s_norm) continue;

        // candidate support: recover the message from the remaining rows and
        // re-check them against a fresh re-encode before accepting
        std::vector<int> clean;
        clean.reserve(code_.P - entry.indices.size());
        for (int p = 0; p < code_.P; ++p)
            if (!std::binary_search(entry.indices.begin(), entry.indices.end(), p)) clean.push_back(p);
        Mat gen_clean = select_rows(code_.generator_T, clean);
        std::vector<double> z_clean(clean.size());
        for (std::size_t i = 0; i < clean.size(); ++i) z_clean[i] = z[clean[i]];
        std::vector<double> q_hat = linalg::lstsq(gen_clean, z_clean);

        double recheck = 0.0;
        for (std::size_t i = 0; i < clean.size(); ++i) {
            double enc = 0.0;
            for (int c = 0; c < code_.Q; ++c) enc += gen_clean(static_cast<int>(i), c) * q_hat[c];
            recheck = std::max(recheck, std::abs(enc - z_clean[i]));
        }
        if (recheck > consistency_tol) continue;

        std::vector<double> e_hat(code_.P, 0.0);
        for (int p : entry.indices) {
            double enc = 0.0;
            for (int c = 0; c < code_.Q; ++c) enc += code_.generator_T(p, c) * q_hat[c];
            e_hat[p] = z[p] - enc;
        }
        out.tag = DecodeTag::CORRECTED;
        out.message = std::move(q_hat);
        out.error_vector = std::move(e_hat);
        out.error_locations = std::set<int>(entry.indices.begin(), entry.indices.end());
        return out;
    }

    out.tag = DecodeTag::FAILURE;
    return out;
}

DecodeOutcome decode(const LinearCode& code, const std::vector<double>& z, DecodeMode mode) {
    return ErrorDecoder(code, mode).decode(z);
}

std::vector<double> interpolate_erasures(const LinearCode& code, const std::map<int, double>& received) {
    if (static_cast<int>(received.size()) < code.Q)
        throw InsufficientEvaluations("have " + std::to_string(received.size()) + " evaluations, need " +
                                      std::to_string(code.Q));
    std::vector<int> rows;
    std::vector<double> rhs;
    rows.reserve(received.size());
    rhs.reserve(received.size());
    for (const auto& [p, v] : received) {
        if (p < 0 || p >= code.P) throw DimensionError("received worker index out of range");
        rows.push_back(p);
        rhs.push_back(v);
    }
    Mat sub = select_rows(code.generator_T, rows);
    if (static_cast<int>(rows.size()) == code.Q) return linalg::solve(sub, rhs);
    return linalg::lstsq(sub, rhs);
}

BlockStreamResult decode_block_stream(const LinearCode& code, const std::vector<std::optional<Mat>>& shards,
                                      DecodeMode mode) {
    if (static_cast<int>(shards.size()) != code.P) throw DimensionError("need one shard slot per worker");
    std::vector<int> present;
    for (int p = 0; p < code.P; ++p)
        if (shards[p].has_value()) present.push_back(p);
    for (int p : present)
        if (!shards[p]->same_shape(*shards[present.front()]))
            throw DimensionError("shard payloads must share one shape");
    if (static_cast<int>(present.size()) < code.Q)
        throw InsufficientEvaluations("only " + std::to_string(present.size()) + " shards survive, need " +
                                      std::to_string(code.Q));

    const int p_eff = static_cast<int>(present.size());
    const Mat& probe = *shards[present.front()];
    const int n_pos = probe.rows() * probe.cols();

    LinearCode punctured;
    if (!code.points.empty() && p_eff < code.P) {
        std::vector<double> sub_points(p_eff);
        for (int i = 0; i < p_eff; ++i) sub_points[i] = code.points[present[i]];
        punctured = code_from_points(sub_points, code.Q);
    } else if (p_eff < code.P) {
        punctured = code_from_generator(select_rows(code.generator_T, present));
    } else {
        punctured = code;
    }

    BlockStreamResult result;
    std::set<int> flagged;  // punctured indices

    if (p_eff > code.Q) {
        ErrorDecoder dec(punctured, mode);
        std::vector<double> z(p_eff);
        for (int pos = 0; pos < n_pos; ++pos) {
            for (int i = 0; i < p_eff; ++i) z[i] = shards[present[i]]->data()[pos];
            DecodeOutcome out = dec.decode(z);
            if (out.tag == DecodeTag::FAILURE) {
                result.outcome.tag = DecodeTag::FAILURE;
                return result;
            }
            if (out.tag == DecodeTag::CORRECTED)
                for (int i : *out.error_locations) flagged.insert(i);
        }
        if (static_cast<int>(flagged.size()) > dec.capacity()) {
            result.outcome.tag = DecodeTag::FAILURE;
            return result;
        }
    }

    // final interpolation from the rows outside the union support
    std::vector<int> clean;
    for (int i = 0; i < p_eff; ++i)
        if (!flagged.count(i)) clean.push_back(i);
    Mat gen_clean(static_cast<int>(clean.size()), code.Q);
    for (std::size_t r = 0; r < clean.size(); ++r)
        for (int c = 0; c < code.Q; ++c) gen_clean(static_cast<int>(r), c) = punctured.generator_T(clean[r], c);

    Mat rhs(static_cast<int>(clean.size()), n_pos);
    for (std::size_t r = 0; r < clean.size(); ++r) {
        const Mat& payload = *shards[present[clean[r]]];
        for (int pos = 0; pos < n_pos; ++pos) rhs(static_cast<int>(r), pos) = payload.data()[pos];
    }
    Mat coeffs = linalg::lstsq_mat(gen_clean, rhs);  // Q x n_pos

    // fresh re-encode check over the rows we trusted
    Mat re_encoded = matmul(gen_clean, coeffs);
    double scale = std::max(1.0, rhs.max_abs());
    if ((re_encoded - rhs).max_abs() > 1e-7 * scale) {
        result.outcome.tag = DecodeTag::FAILURE;
        return result;
    }

    result.coefficients.reserve(code.Q);
    for (int e = 0; e < code.Q; ++e) {
        Mat block(probe.rows(), probe.cols());
        for (int pos = 0; pos < n_pos; ++pos) block.data()[pos] = coeffs(e, pos);
        result.coefficients.push_back(std::move(block));
    }
    result.outcome.tag = flagged.empty() ? DecodeTag::NO_ERRORS : DecodeTag::CORRECTED;
    std::set<int> worker_ids;
    for (int i : flagged) worker_ids.insert(present[i]);
    result.outcome.error_locations = std::move(worker_ids);
    return result;
}

}  // namespace codedc
