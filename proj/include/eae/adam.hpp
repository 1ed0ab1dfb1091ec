#pragma once

#include <cstdint>
#include <vector>

#include "eae/autoencoder.hpp"

namespace eae {

struct AdamSettings {
    double learning_rate = 1e-3;
    double weight_decay = 1e-5;  // decoupled
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First/second moment buffers shaped exactly like the model parameters.
struct AdamState {
    AdamSettings settings;
    std::uint64_t step = 0;
    std::vector<DenseMatrix> m_weight, v_weight;
    std::vector<std::vector<double>> m_bias, v_bias;
};

AdamState make_adam_state(const MlpAutoencoder& model, const AdamSettings& settings);

/// One bias-corrected Adam update with decoupled weight decay:
///   w -= lr * (m_hat / (sqrt(v_hat) + eps) + wd * w_old)
void adam_step(MlpAutoencoder& model, const ParamGrads& grads, AdamState& state);

}  // namespace eae
