#include "eae/autoencoder.hpp"

#include <cmath>
#include <string>

namespace eae {

namespace {

void apply_activation(Activation act, const DenseMatrix& pre, DenseMatrix& post) {
    post = pre;
    switch (act) {
        case Activation::identity:
            break;
        case Activation::relu:
            for (double& v : post.values) v = v > 0.0 ? v : 0.0;
            break;
        case Activation::sigmoid:
            for (double& v : post.values) v = 1.0 / (1.0 + std::exp(-v));
            break;
    }
}

// dZ = dA (.) act'(Z), derivative taken from the cached post-activation.
void apply_activation_grad(Activation act, const DenseMatrix& post, DenseMatrix& grad) {
    switch (act) {
        case Activation::identity:
            break;
        case Activation::relu:
            for (std::size_t i = 0; i < grad.values.size(); ++i) {
                if (post.values[i] <= 0.0) grad.values[i] = 0.0;
            }
            break;
        case Activation::sigmoid:
            for (std::size_t i = 0; i < grad.values.size(); ++i) {
                const double y = post.values[i];
                grad.values[i] *= y * (1.0 - y);
            }
            break;
    }
}

DenseMatrix flatten_batch(const ImageBatch& batch) {
    DenseMatrix m;
    m.rows = batch.b;
    m.cols = batch.sample_size();
    m.values = batch.values;  // identical row-major layout
    return m;
}

void require_input_dim(const MlpAutoencoder& model, const ImageBatch& batch, const char* op) {
    if (batch.sample_size() != model.input_dim()) {
        throw shape_error(std::string(op) + ": batch sample size " +
                          std::to_string(batch.sample_size()) + " does not match model input " +
                          std::to_string(model.input_dim()));
    }
}

}  // namespace

std::size_t MlpAutoencoder::parameter_count() const {
    std::size_t n = 0;
    for (const Layer& l : layers) n += l.weight.size() + l.bias.size();
    return n;
}

MlpAutoencoder init_model(std::size_t input_dim, std::size_t hidden1, std::size_t hidden2,
                          std::size_t latent_dim, std::uint64_t seed) {
    if (!(input_dim > hidden1 && hidden1 > hidden2 && hidden2 > latent_dim && latent_dim >= 1)) {
        throw config_error("init_model: encoder widths must strictly decrease, got " +
                           std::to_string(input_dim) + " > " + std::to_string(hidden1) + " > " +
                           std::to_string(hidden2) + " > " + std::to_string(latent_dim));
    }

    MlpAutoencoder model;
    model.seed = seed;
    model.widths = {input_dim, hidden1, hidden2, latent_dim, hidden2, hidden1, input_dim};
    const Activation acts[6] = {Activation::relu,   Activation::relu, Activation::identity,
                                Activation::relu,   Activation::relu, Activation::sigmoid};

    Rng rng(seed);
    for (std::size_t i = 0; i + 1 < model.widths.size(); ++i) {
        Layer layer;
        const std::size_t fan_in = model.widths[i];
        const std::size_t fan_out = model.widths[i + 1];
        layer.weight = DenseMatrix::zeros(fan_in, fan_out);
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
        for (double& v : layer.weight.values) v = (2.0 * uniform01(rng) - 1.0) * bound;
        layer.bias.assign(fan_out, 0.0);
        layer.act = acts[i];
        model.layers.push_back(std::move(layer));
    }
    return model;
}

std::pair<ImageBatch, ForwardCache> forward(const MlpAutoencoder& model, const ImageBatch& batch) {
    require_input_dim(model, batch, "forward");

    ForwardCache cache;
    cache.batch = batch.b;
    cache.input = flatten_batch(batch);
    cache.pre.reserve(model.layers.size());
    cache.post.reserve(model.layers.size());

    const DenseMatrix* activation = &cache.input;
    for (const Layer& layer : model.layers) {
        DenseMatrix pre = matmul(*activation, layer.weight);
        add_bias_rows(pre, layer.bias);
        DenseMatrix post;
        apply_activation(layer.act, pre, post);
        cache.pre.push_back(std::move(pre));
        cache.post.push_back(std::move(post));
        activation = &cache.post.back();
    }

    ImageBatch recon = ImageBatch::zeros(batch.b, batch.c, batch.h, batch.w);
    recon.values = cache.post.back().values;
    return {std::move(recon), std::move(cache)};
}

ImageBatch reconstruct(const MlpAutoencoder& model, const ImageBatch& batch) {
    require_input_dim(model, batch, "reconstruct");

    DenseMatrix activation = flatten_batch(batch);
    for (const Layer& layer : model.layers) {
        DenseMatrix pre = matmul(activation, layer.weight);
        add_bias_rows(pre, layer.bias);
        apply_activation(layer.act, pre, activation);
    }
    ImageBatch recon = ImageBatch::zeros(batch.b, batch.c, batch.h, batch.w);
    recon.values = std::move(activation.values);
    return recon;
}

ParamGrads backward(const MlpAutoencoder& model, const ForwardCache& cache,
                    const ImageBatch& grad_reconstruction) {
    if (cache.pre.size() != model.layers.size() || cache.post.size() != model.layers.size()) {
        throw shape_error("backward: cache layer count does not match model");
    }
    if (cache.batch != grad_reconstruction.b ||
        grad_reconstruction.sample_size() != model.input_dim()) {
        throw shape_error("backward: gradient shape does not match cached forward pass");
    }
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        if (cache.post[i].rows != cache.batch || cache.post[i].cols != model.widths[i + 1]) {
            throw shape_error("backward: stale cache for layer " + std::to_string(i));
        }
    }

    ParamGrads grads;
    grads.weight.resize(model.layers.size());
    grads.bias.resize(model.layers.size());

    DenseMatrix delta = flatten_batch(grad_reconstruction);
    for (std::size_t i = model.layers.size(); i-- > 0;) {
        apply_activation_grad(model.layers[i].act, cache.post[i], delta);
        const DenseMatrix& below = i == 0 ? cache.input : cache.post[i - 1];
        grads.weight[i] = matmul_ta(below, delta);
        grads.bias[i] = column_sums(delta);
        if (i > 0) delta = matmul_tb(delta, model.layers[i].weight);
    }
    return grads;
}

}  // namespace eae
