#pragma once

#include <filesystem>

#include "eae/image_batch.hpp"

namespace eae {

// Writes one image of the batch as binary PGM (1 channel) or PPM
// (3 channels). Intensities are quantized as round(v * 255).
void write_pnm(const std::filesystem::path& path, const ImageBatch& batch,
               std::size_t index);

// Reads a binary PGM/PPM file into a single-sample batch with intensities
// scaled to [0, 1].
ImageBatch read_pnm(const std::filesystem::path& path);

}  // namespace eae
