#include "eae/replay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eae/common.hpp"

namespace eae {

SppConfig SppConfig::make(std::size_t batch, std::size_t divisor,
                          bool weighting) {
    if (batch == 0) throw config_error("spp: batch size must be positive");
    if (divisor == 0) throw config_error("spp: divisor k must be positive");
    SppConfig config;
    config.batch = batch;
    config.divisor = divisor;
    config.memory = batch / divisor;
    config.weighting = weighting;
    if (config.memory == 0) {
        throw config_error("spp: k=" + std::to_string(divisor) +
                           " exceeds batch size " + std::to_string(batch) +
                           " (memory would be empty)");
    }
    return config;
}

std::vector<double> focal_weights(const std::vector<double>& losses,
                                  double epsilon) {
    if (losses.empty()) throw domain_error("focal_weights: empty loss array");
    if (!all_finite(losses)) {
        throw domain_error("focal_weights: non-finite loss");
    }
    const auto [lo_it, hi_it] = std::minmax_element(losses.begin(), losses.end());
    const double lo = *lo_it;
    const double span = std::max(*hi_it - lo, epsilon);
    const double top = static_cast<double>(losses.size());
    const double scale = (top - 1.0) / span;
    std::vector<double> weights(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) {
        // rounding in the affine map may overshoot the upper bound by an ulp
        weights[i] = std::min(1.0 + (losses[i] - lo) * scale, top);
    }
    return weights;
}

double weighted_batch_loss(const std::vector<double>& losses,
                           const std::vector<double>& weights) {
    if (losses.size() != weights.size()) {
        throw shape_error("weighted_batch_loss: length mismatch");
    }
    if (losses.empty()) {
        throw domain_error("weighted_batch_loss: empty loss array");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < losses.size(); ++i) {
        acc += weights[i] * losses[i];
    }
    return acc / static_cast<double>(losses.size());
}

RankedSplit rank_and_split(const std::vector<double>& losses,
                           const std::vector<std::size_t>& dataset_indices,
                           std::size_t batch, std::size_t memory) {
    if (losses.size() != dataset_indices.size()) {
        throw shape_error("rank_and_split: losses and indices differ in length");
    }
    if (losses.size() < batch) {
        throw config_error("rank_and_split: pool of " +
                           std::to_string(losses.size()) +
                           " is smaller than the batch size " +
                           std::to_string(batch));
    }

    std::vector<std::size_t> order(losses.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (losses[a] != losses[b]) return losses[a] > losses[b];
        return dataset_indices[a] < dataset_indices[b];
    });

    RankedSplit split;
    split.update.assign(order.begin(), order.begin() + batch);
    const std::size_t carry = std::min(memory, order.size());
    split.carryover.assign(order.begin(), order.begin() + carry);
    return split;
}

StepOutcome spp_training_step(const SppConfig& config,
                              const ImageBatch& incoming,
                              const std::vector<std::size_t>& incoming_indices,
                              ReplayBuffer& buffer,
                              const SppCallbacks& callbacks) {
    if (incoming.b != config.batch) {
        throw shape_error("spp step: incoming batch has " +
                          std::to_string(incoming.b) + " samples, expected " +
                          std::to_string(config.batch));
    }
    if (incoming_indices.size() != incoming.b) {
        throw shape_error("spp step: index count does not match batch");
    }
    if (buffer.held.size() > config.memory) {
        throw domain_error("spp step: buffer exceeds its capacity");
    }

    const std::size_t sample = incoming.sample_size();
    const std::size_t pool_size = incoming.b + buffer.held.size();
    ImageBatch pool = ImageBatch::zeros(pool_size, incoming.c, incoming.h,
                                        incoming.w);
    std::vector<std::size_t> pool_indices(pool_size);
    std::copy(incoming.values.begin(), incoming.values.end(),
              pool.values.begin());
    std::copy(incoming_indices.begin(), incoming_indices.end(),
              pool_indices.begin());
    for (std::size_t i = 0; i < buffer.held.size(); ++i) {
        const HeldSample& held = buffer.held[i];
        std::copy(held.pixels.begin(), held.pixels.end(),
                  pool.values.begin() + (incoming.b + i) * sample);
        pool_indices[incoming.b + i] = held.dataset_index;
    }

    const std::vector<double> losses = callbacks.pool_losses(pool);
    if (losses.size() != pool_size) {
        throw shape_error("spp step: pool_losses returned wrong length");
    }
    const RankedSplit split =
        rank_and_split(losses, pool_indices, config.batch, config.memory);

    buffer.capacity = config.memory;
    buffer.held.clear();
    for (std::size_t pos : split.carryover) {
        HeldSample held;
        held.pixels.assign(pool.values.begin() + pos * sample,
                           pool.values.begin() + (pos + 1) * sample);
        held.dataset_index = pool_indices[pos];
        held.ranked_loss = losses[pos];
        buffer.held.push_back(std::move(held));
    }

    const ImageBatch update_batch = gather_samples(pool, split.update);

    StepOutcome outcome;
    outcome.pool_size = pool_size;
    outcome.update_indices.reserve(split.update.size());
    for (std::size_t pos : split.update) {
        outcome.update_indices.push_back(pool_indices[pos]);
    }
    outcome.carryover_indices.reserve(split.carryover.size());
    for (std::size_t pos : split.carryover) {
        outcome.carryover_indices.push_back(pool_indices[pos]);
    }
    outcome.weighted_loss = callbacks.update(update_batch);
    return outcome;
}

}  // namespace eae
