#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eae/image_batch.hpp"

namespace eae {

// Additive floor applied to the normalized surprisal mask, keeping every
// pixel's weight in [floor, 1 + floor] so common pixels still contribute.
inline constexpr double kEntropyWeightFloor = 0.05;

// Per-location intensity histogram across the samples of one batch.
// Row ell covers one (channel, row, col) position; its J counters sum to
// the batch size.
struct PixelHistogram {
    std::size_t locations = 0;  // C*H*W
    std::size_t bins = 0;
    std::size_t batch = 0;
    std::vector<std::uint32_t> counts;  // locations x bins, row-major

    double bin_width() const { return 1.0 / static_cast<double>(bins); }

    std::uint32_t count(std::size_t location, std::size_t bin) const {
        return counts[location * bins + bin];
    }
};

// Raw per-pixel surprisal and its per-(sample, channel) min-max
// normalization. The mask stays in [0, 1].
struct SurprisalMap {
    ImageBatch raw;
    ImageBatch mask;
    double epsilon = 0.0;
};

// Per-sample decomposition of the composite loss.
struct LossBreakdown {
    std::vector<double> ent;    // weighted-L1 term per sample
    std::vector<double> mse;    // squared-error term per sample
    std::vector<double> total;  // mse + lambda * ent
    double mean = 0.0;          // batch mean of total
    double lambda = 0.0;
};

// Maps an intensity in [0, 1] to a bin in {0, ..., bins-1} via
// floor(x * (bins - 1)); x = 1 lands in the top bin.
std::size_t bin_index(double x, std::size_t bins);

PixelHistogram build_histogram(const ImageBatch& batch, std::size_t bins);

// Density estimate per pixel: (bins / batch) * count of the pixel's bin at
// its own location. Bin-width invariant: summing count/batch * (1/bins)
// over bins gives 1.
ImageBatch density(const PixelHistogram& hist, const ImageBatch& batch);

// Elementwise -log(p + epsilon).
ImageBatch surprisal(const ImageBatch& density, double epsilon);

// Min-max normalizes each (sample, channel) plane of the raw surprisal to
// [0, 1]; constant planes map to 0.
ImageBatch entropy_mask(const ImageBatch& raw, double epsilon);

// Histogram -> density -> surprisal -> mask in one call.
SurprisalMap compute_surprisal(const ImageBatch& batch, std::size_t bins,
                               double epsilon);

// Composite objective: per-sample MSE plus lambda times the mask-weighted
// mean absolute error. The mask is computed from the input batch alone.
LossBreakdown composite_loss(const ImageBatch& batch,
                             const ImageBatch& reconstruction, double lambda,
                             std::size_t bins, double epsilon);

// Gradient of the batch-mean composite loss with respect to the
// reconstruction. The mask is treated as a constant; sign(0) contributes 0.
ImageBatch composite_loss_grad(const ImageBatch& batch,
                               const ImageBatch& reconstruction, double lambda,
                               std::size_t bins, double epsilon);

}  // namespace eae
