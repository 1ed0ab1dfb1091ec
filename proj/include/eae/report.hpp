#pragma once

#include <filesystem>

#include "eae/autoencoder.hpp"
#include "eae/config.hpp"
#include "eae/dataset.hpp"

namespace eae {

// Reconstructs the whole dataset with the model and writes the evaluation
// bundle into `dir`: summary.csv, per-sample metrics.csv, the
// frequency/surprise diagnostic tables, a manifest snapshot for comparing
// reports, reconstruction dumps for the rarest/commonest samples, and (for
// the entropy loss) the per-sample loss breakdown plus mask images.
void write_evaluation_report(const std::filesystem::path& dir,
                             const ExperimentConfig& config,
                             const Dataset& dataset,
                             const MlpAutoencoder& model);

}  // namespace eae
