#pragma once

#include <filesystem>

#include "eae/autoencoder.hpp"

namespace eae {

/// Binary model container, little-endian, layout documented in
/// docs/file_formats.md. Magic "EAECKPT\0", version 1.
void save_checkpoint(const MlpAutoencoder& model, const std::filesystem::path& path);

MlpAutoencoder load_checkpoint(const std::filesystem::path& path);

}  // namespace eae
