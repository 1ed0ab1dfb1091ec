#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eae/image_batch.hpp"
#include "eae/matrix.hpp"

namespace eae {

enum class Activation : std::uint32_t { identity = 0, relu = 1, sigmoid = 2 };

struct Layer {
    DenseMatrix weight;        // in x out
    std::vector<double> bias;  // out
    Activation act = Activation::identity;
};

/// Fully connected autoencoder with a strictly shrinking encoder
/// input_dim > hidden1 > hidden2 > latent_dim and a mirrored decoder.
/// Hidden layers use ReLU, the latent layer is linear, the output layer
/// is a sigmoid so reconstructions stay in (0,1).
struct MlpAutoencoder {
    std::vector<std::size_t> widths;  // layer_count+1 entries, e.g. 4096,2000,200,8,200,2000,4096
    std::vector<Layer> layers;
    std::uint64_t seed = 0;

    std::size_t input_dim() const { return widths.front(); }
    std::size_t latent_dim() const { return widths[widths.size() / 2]; }
    std::size_t parameter_count() const;
};

/// Weights uniform in [-sqrt(6/fan_in), +sqrt(6/fan_in)], biases zero,
/// drawn in layer order from a generator seeded with `seed`.
MlpAutoencoder init_model(std::size_t input_dim, std::size_t hidden1, std::size_t hidden2,
                          std::size_t latent_dim, std::uint64_t seed);

/// Per-layer pre- and post-activation values for one batch, consumed by
/// backward(). `input` keeps the flattened batch for the first weight
/// gradient.
struct ForwardCache {
    std::size_t batch = 0;
    DenseMatrix input;
    std::vector<DenseMatrix> pre;
    std::vector<DenseMatrix> post;
};

std::pair<ImageBatch, ForwardCache> forward(const MlpAutoencoder& model, const ImageBatch& batch);

// Forward pass without gradient bookkeeping (ranking / evaluation).
ImageBatch reconstruct(const MlpAutoencoder& model, const ImageBatch& batch);

struct ParamGrads {
    std::vector<DenseMatrix> weight;
    std::vector<std::vector<double>> bias;
};

/// Exact analytic gradients of all parameters given d(loss)/d(reconstruction).
/// `cache` must come from the immediately preceding forward on the same batch.
ParamGrads backward(const MlpAutoencoder& model, const ForwardCache& cache,
                    const ImageBatch& grad_reconstruction);

}  // namespace eae
