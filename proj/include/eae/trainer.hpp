#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "eae/adam.hpp"
#include "eae/autoencoder.hpp"
#include "eae/config.hpp"
#include "eae/dataset.hpp"
#include "eae/loss.hpp"
#include "eae/replay.hpp"

namespace eae {

// Model + optimizer + objective for one run. update_on performs exactly one
// forward/backward/Adam cycle.
struct Trainer {
    MlpAutoencoder model;
    AdamState adam;
    LossSpec loss;

    // Per-sample losses under the active objective, no parameter changes.
    std::vector<double> eval_losses(const ImageBatch& batch) const;

    // One optimizer step. With focal=true the per-sample losses of this
    // forward pass are mapped to [1, B] weights that scale both the logged
    // loss and the gradient. Returns the logged batch loss.
    double update_on(const ImageBatch& batch, bool focal, double focal_epsilon);
};

// Materializes the configured dataset: closed-form pendulum frames for
// `simulated`, PGM/PPM ingestion for `folder`. The simulated dataset is
// identical across run seeds so that seeds only vary the training.
Dataset build_dataset(const ExperimentConfig& config);

struct TrainOutcome {
    std::filesystem::path run_dir;
    std::filesystem::path checkpoint;
    double final_epoch_loss = 0.0;
};

// Trains one seed and writes run_dir = <out>/seed<S>/ with the resolved
// config, deterministic training log, wall-clock timing (separate file, the
// only non-reproducible output), optional replay step log, and the final
// checkpoint.
TrainOutcome train_single_run(const ExperimentConfig& config,
                              std::uint64_t seed, const Dataset& dataset,
                              bool quiet);

}  // namespace eae
