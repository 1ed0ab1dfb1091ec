#include "eae/adam.hpp"

#include <cmath>
#include <string>

namespace eae {

namespace {

void update_array(std::vector<double>& param, const std::vector<double>& grad,
                  std::vector<double>& m, std::vector<double>& v, const AdamSettings& s,
                  double bias1, double bias2) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad[i];
        m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g;
        v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g * g;
        const double m_hat = m[i] / bias1;
        const double v_hat = v[i] / bias2;
        param[i] -= s.learning_rate * (m_hat / (std::sqrt(v_hat) + s.epsilon) +
                                       s.weight_decay * param[i]);
    }
}

}  // namespace

AdamState make_adam_state(const MlpAutoencoder& model, const AdamSettings& settings) {
    AdamState state;
    state.settings = settings;
    for (const Layer& layer : model.layers) {
        state.m_weight.push_back(DenseMatrix::zeros(layer.weight.rows, layer.weight.cols));
        state.v_weight.push_back(DenseMatrix::zeros(layer.weight.rows, layer.weight.cols));
        state.m_bias.emplace_back(layer.bias.size(), 0.0);
        state.v_bias.emplace_back(layer.bias.size(), 0.0);
    }
    return state;
}

void adam_step(MlpAutoencoder& model, const ParamGrads& grads, AdamState& state) {
    if (grads.weight.size() != model.layers.size() || grads.bias.size() != model.layers.size() ||
        state.m_weight.size() != model.layers.size()) {
        throw shape_error("adam_step: gradient/state layer count does not match model");
    }
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const Layer& layer = model.layers[i];
        if (grads.weight[i].rows != layer.weight.rows ||
            grads.weight[i].cols != layer.weight.cols ||
            grads.bias[i].size() != layer.bias.size()) {
            throw shape_error("adam_step: gradient shape mismatch at layer " + std::to_string(i));
        }
    }

    state.step += 1;
    const AdamSettings& s = state.settings;
    const double bias1 = 1.0 - std::pow(s.beta1, static_cast<double>(state.step));
    const double bias2 = 1.0 - std::pow(s.beta2, static_cast<double>(state.step));

    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        update_array(model.layers[i].weight.values, grads.weight[i].values,
                     state.m_weight[i].values, state.v_weight[i].values, s, bias1, bias2);
        update_array(model.layers[i].bias, grads.bias[i], state.m_bias[i], state.v_bias[i], s,
                     bias1, bias2);
    }
}

}  // namespace eae
