#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "eae/image_batch.hpp"

namespace eae {

// Hard-example replay settings. Every step pools the incoming batch with up
// to `memory` carried-over samples, updates on the `batch` hardest and
// carries the `memory` hardest into the next step.
struct SppConfig {
    std::size_t batch = 0;    // gradient budget per step
    std::size_t divisor = 0;  // memory = floor(batch / divisor)
    std::size_t memory = 0;
    bool weighting = true;

    static SppConfig make(std::size_t batch, std::size_t divisor,
                          bool weighting);
};

// One sample parked between steps, stored by value together with the loss
// that ranked it.
struct HeldSample {
    std::vector<double> pixels;
    std::size_t dataset_index = 0;
    double ranked_loss = 0.0;
};

struct ReplayBuffer {
    std::size_t capacity = 0;
    std::vector<HeldSample> held;

    void clear() { held.clear(); }
};

// What one scheduler step did, for logging and audit.
struct StepOutcome {
    std::size_t pool_size = 0;
    std::vector<std::size_t> update_indices;     // dataset indices, hardest first
    std::vector<std::size_t> carryover_indices;  // dataset indices, hardest first
    double weighted_loss = 0.0;
};

// Maps per-sample losses affinely onto [1, n]; the hardest sample gets n,
// the easiest 1, all-equal losses collapse to 1.
std::vector<double> focal_weights(const std::vector<double>& losses,
                                  double epsilon);

// Mean of weight * loss.
double weighted_batch_loss(const std::vector<double>& losses,
                           const std::vector<double>& weights);

// Positions into the pool, ranked by descending loss with ties broken by
// lower dataset index. update holds the top `batch`, carryover the top
// `memory`.
struct RankedSplit {
    std::vector<std::size_t> update;
    std::vector<std::size_t> carryover;
};

RankedSplit rank_and_split(const std::vector<double>& losses,
                           const std::vector<std::size_t>& dataset_indices,
                           std::size_t batch, std::size_t memory);

// Hooks the scheduler drives. pool_losses evaluates the active objective
// per sample without touching parameters; update performs exactly one
// optimizer step on the given batch and returns the loss to log.
struct SppCallbacks {
    std::function<std::vector<double>(const ImageBatch&)> pool_losses;
    std::function<double(const ImageBatch&)> update;
};

// One replay step: pool = incoming + buffer, rank by pool_losses, refill
// the buffer with the top `memory` (copies taken before the update), then
// update on the top `batch`.
StepOutcome spp_training_step(const SppConfig& config,
                              const ImageBatch& incoming,
                              const std::vector<std::size_t>& incoming_indices,
                              ReplayBuffer& buffer,
                              const SppCallbacks& callbacks);

}  // namespace eae
