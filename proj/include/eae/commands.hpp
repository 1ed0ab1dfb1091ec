#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace eae {

// Shared command-line state. Seed and output overrides replace the
// corresponding config values when non-empty.
struct CliOptions {
    std::filesystem::path config_path;
    std::vector<std::uint64_t> seed_overrides;
    std::string out_override;
    bool quiet = false;
};

// Writes the simulated dataset (numbered PGM frames plus a manifest CSV)
// to the output directory. Refuses folder-backed configs.
void cmd_generate(const CliOptions& options);

// Trains one run per seed, each into <out>/seed<S>/.
void cmd_train(const CliOptions& options);

// Loads a checkpoint and writes the evaluation bundle for the configured
// dataset.
void cmd_evaluate(const CliOptions& options,
                  const std::filesystem::path& checkpoint);

// Joins the summary metrics of several evaluation reports into one CSV.
// All reports must carry byte-identical dataset manifests.
void cmd_compare(const std::vector<std::filesystem::path>& reports,
                 const std::string& out_dir, bool quiet);

}  // namespace eae
