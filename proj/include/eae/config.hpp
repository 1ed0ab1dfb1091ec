#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eae/loss.hpp"
#include "eae/pendulum.hpp"

namespace eae {

struct DatasetConfig {
    std::string kind = "simulated";  // simulated | folder
    std::string folder;              // image directory when kind == folder
    PendulumParams pendulum;
    std::size_t rarity_bins = 20;

    bool operator==(const DatasetConfig&) const = default;
};

struct ModelConfig {
    std::size_t hidden1 = 2000;
    std::size_t hidden2 = 200;
    std::size_t latent = 8;

    bool operator==(const ModelConfig&) const = default;
};

struct SchedulerConfig {
    std::string kind = "plain";  // plain | spp
    std::size_t k = 4;           // memory divisor for spp
    bool weighting = true;       // focal-style weighting in spp mode

    bool operator==(const SchedulerConfig&) const = default;
};

struct OptimizerConfig {
    double learning_rate = 1e-3;
    double weight_decay = 1e-5;

    bool operator==(const OptimizerConfig&) const = default;
};

struct TrainConfig {
    std::size_t batch = 16;
    std::size_t epochs = 20;
    std::vector<std::uint64_t> seeds = {1};

    bool operator==(const TrainConfig&) const = default;
};

// One experiment, fully describable as a key=value file with sections.
// Parsing rejects unknown sections/keys and reports every violation at
// once; parse -> serialize -> parse is the identity.
struct ExperimentConfig {
    DatasetConfig dataset;
    ModelConfig model;
    LossSpec loss;
    SchedulerConfig scheduler;
    OptimizerConfig optimizer;
    TrainConfig train;
    std::string out_dir = "out";

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

// The same experiment restricted to a single seed; used for per-seed
// sub-run provenance dumps.
ExperimentConfig with_single_seed(const ExperimentConfig& config,
                                  std::uint64_t seed);

}  // namespace eae
