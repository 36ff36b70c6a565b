#include <cmath>

#include "codedc/dnn.hpp"
#include "codedc/rng.hpp"

namespace codedc {

// Uncoded SGD recursions; the conventions (delta sign, eta placement, g(.))
// match the coded path exactly so trajectories are comparable.

void oracle_train_iteration(OracleNet& net, const Mat& x, const Mat& y, double eta, double lambda) {
    const int l_count = static_cast<int>(net.weights.size());
    std::vector<Mat> inputs(l_count + 1);
    inputs[0] = x;
    for (int l = 1; l <= l_count; ++l) inputs[l] = sigmoid(matmul(net.weights[l - 1], inputs[l - 1]));

    Mat delta = last_layer_delta(inputs[l_count], y, inputs[l_count]);
    for (int l = l_count; l >= 1; --l) {
        Mat c_t = matmul(transpose(delta), net.weights[l - 1]);
        Mat prev_delta_t = hadamard(c_t, sigmoid_gain(transpose(inputs[l - 1])));
        net.weights[l - 1] =
            (1.0 - eta * lambda) * net.weights[l - 1] + eta * matmul(delta, transpose(inputs[l - 1]));
        if (l > 1) delta = transpose(prev_delta_t);
    }
}

OracleNet uncoded_reference_train(const TrainConfig& config) {
    OracleNet net;
    for (int l = 1; l <= config.layers; ++l) {
        Rng rng(derive_seed(config.seed, 0x57, l));
        double scale = 1.0 / std::sqrt(static_cast<double>(config.dims[l - 1]));
        net.weights.push_back(Mat::gaussian(config.dims[l], config.dims[l - 1], rng, scale));
    }
    for (int k = 1; k <= config.iterations; ++k) {
        auto [x, y] = data_for_iteration(config, k);
        oracle_train_iteration(net, x, y, config.eta, config.lambda);
    }
    return net;
}

}  // namespace codedc
