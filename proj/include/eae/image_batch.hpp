#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eae/common.hpp"

namespace eae {

/// Batch of images, values row-major in [b][c][h][w] order. Training inputs
/// carry intensities in [0,1]; reconstructions lie in (0,1).
struct ImageBatch {
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t h = 0;
    std::size_t w = 0;
    std::vector<double> values;

    static ImageBatch zeros(std::size_t b, std::size_t c, std::size_t h, std::size_t w);

    std::size_t sample_size() const { return c * h * w; }
    std::size_t size() const { return b * c * h * w; }

    double& at(std::size_t bi, std::size_t ci, std::size_t hi, std::size_t wi) {
        return values[((bi * c + ci) * h + hi) * w + wi];
    }
    double at(std::size_t bi, std::size_t ci, std::size_t hi, std::size_t wi) const {
        return values[((bi * c + ci) * h + hi) * w + wi];
    }

    std::span<const double> sample(std::size_t bi) const {
        return {values.data() + bi * sample_size(), sample_size()};
    }
    std::span<double> sample(std::size_t bi) {
        return {values.data() + bi * sample_size(), sample_size()};
    }

    bool same_shape(const ImageBatch& other) const {
        return b == other.b && c == other.c && h == other.h && w == other.w;
    }
};

// Throws shape_error unless both batches have identical dimensions.
void require_same_shape(const ImageBatch& a, const ImageBatch& batch, const char* op);

// Throws domain_error if any value falls outside [0,1].
void require_unit_range(const ImageBatch& batch, const char* op);

// Copies the given samples (in order) into a new batch.
ImageBatch gather_samples(const ImageBatch& src, std::span<const std::size_t> rows);

}  // namespace eae
