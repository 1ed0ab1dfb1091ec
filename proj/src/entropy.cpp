#include "eae/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eae/common.hpp"

namespace eae {

std::size_t bin_index(double x, std::size_t bins) {
    if (bins < 2) {
        throw config_error("bin_index: bin count must be at least 2, got " +
                           std::to_string(bins));
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw domain_error("bin_index: intensity " + fmt_double(x) +
                           " outside [0, 1]");
    }
    auto k = static_cast<std::size_t>(x * static_cast<double>(bins - 1));
    return std::min(k, bins - 1);
}

PixelHistogram build_histogram(const ImageBatch& batch, std::size_t bins) {
    if (batch.b == 0 || batch.sample_size() == 0) {
        throw domain_error("build_histogram: empty batch");
    }
    require_unit_range(batch, "build_histogram");

    PixelHistogram hist;
    hist.locations = batch.sample_size();
    hist.bins = bins;
    hist.batch = batch.b;
    hist.counts.assign(hist.locations * bins, 0);
    for (std::size_t bi = 0; bi < batch.b; ++bi) {
        const double* sample = batch.values.data() + bi * hist.locations;
        for (std::size_t loc = 0; loc < hist.locations; ++loc) {
            ++hist.counts[loc * bins + bin_index(sample[loc], bins)];
        }
    }
    return hist;
}

ImageBatch density(const PixelHistogram& hist, const ImageBatch& batch) {
    if (hist.locations != batch.sample_size() || hist.batch != batch.b) {
        throw shape_error("density: histogram does not match batch shape");
    }
    ImageBatch out = ImageBatch::zeros(batch.b, batch.c, batch.h, batch.w);
    const double scale =
        static_cast<double>(hist.bins) / static_cast<double>(hist.batch);
    for (std::size_t bi = 0; bi < batch.b; ++bi) {
        const double* sample = batch.values.data() + bi * hist.locations;
        double* dest = out.values.data() + bi * hist.locations;
        for (std::size_t loc = 0; loc < hist.locations; ++loc) {
            const std::size_t k = bin_index(sample[loc], hist.bins);
            dest[loc] = scale * static_cast<double>(hist.count(loc, k));
        }
    }
    return out;
}

ImageBatch surprisal(const ImageBatch& density, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw domain_error("surprisal: epsilon must be positive");
    }
    ImageBatch out = density;
    for (double& v : out.values) v = -std::log(v + epsilon);
    return out;
}

ImageBatch entropy_mask(const ImageBatch& raw, double epsilon) {
    ImageBatch out = ImageBatch::zeros(raw.b, raw.c, raw.h, raw.w);
    const std::size_t plane = raw.h * raw.w;
    for (std::size_t bi = 0; bi < raw.b; ++bi) {
        for (std::size_t ci = 0; ci < raw.c; ++ci) {
            const double* src = raw.values.data() + (bi * raw.c + ci) * plane;
            double* dest = out.values.data() + (bi * raw.c + ci) * plane;
            double lo = src[0];
            double hi = src[0];
            for (std::size_t i = 1; i < plane; ++i) {
                lo = std::min(lo, src[i]);
                hi = std::max(hi, src[i]);
            }
            const double span = hi - lo + epsilon;
            for (std::size_t i = 0; i < plane; ++i) {
                dest[i] = std::clamp((src[i] - lo) / span, 0.0, 1.0);
            }
        }
    }
    return out;
}

SurprisalMap compute_surprisal(const ImageBatch& batch, std::size_t bins,
                               double epsilon) {
    SurprisalMap map;
    map.epsilon = epsilon;
    map.raw = surprisal(density(build_histogram(batch, bins), batch), epsilon);
    map.mask = entropy_mask(map.raw, epsilon);
    return map;
}

LossBreakdown composite_loss(const ImageBatch& batch,
                             const ImageBatch& reconstruction, double lambda,
                             std::size_t bins, double epsilon) {
    require_same_shape(batch, reconstruction, "composite_loss");
    const ImageBatch mask = compute_surprisal(batch, bins, epsilon).mask;

    LossBreakdown breakdown;
    breakdown.lambda = lambda;
    breakdown.ent.resize(batch.b);
    breakdown.mse.resize(batch.b);
    breakdown.total.resize(batch.b);

    const std::size_t n = batch.sample_size();
    const double inv_n = 1.0 / static_cast<double>(n);
    double sum_total = 0.0;
    for (std::size_t bi = 0; bi < batch.b; ++bi) {
        const double* x = batch.values.data() + bi * n;
        const double* y = reconstruction.values.data() + bi * n;
        const double* m = mask.values.data() + bi * n;
        double ent = 0.0;
        double mse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = y[i] - x[i];
            ent += std::abs(diff) * (m[i] + kEntropyWeightFloor);
            mse += diff * diff;
        }
        breakdown.ent[bi] = ent * inv_n;
        breakdown.mse[bi] = mse * inv_n;
        breakdown.total[bi] = breakdown.mse[bi] + lambda * breakdown.ent[bi];
        sum_total += breakdown.total[bi];
    }
    breakdown.mean = sum_total / static_cast<double>(batch.b);
    return breakdown;
}

ImageBatch composite_loss_grad(const ImageBatch& batch,
                               const ImageBatch& reconstruction, double lambda,
                               std::size_t bins, double epsilon) {
    require_same_shape(batch, reconstruction, "composite_loss_grad");
    const ImageBatch mask = compute_surprisal(batch, bins, epsilon).mask;

    ImageBatch grad = ImageBatch::zeros(batch.b, batch.c, batch.h, batch.w);
    const std::size_t n = batch.sample_size();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double inv_b = 1.0 / static_cast<double>(batch.b);
    for (std::size_t bi = 0; bi < batch.b; ++bi) {
        const double* x = batch.values.data() + bi * n;
        const double* y = reconstruction.values.data() + bi * n;
        const double* m = mask.values.data() + bi * n;
        double* g = grad.values.data() + bi * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = y[i] - x[i];
            const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
            g[i] = inv_b * inv_n *
                   (2.0 * diff +
                    lambda * sign * (m[i] + kEntropyWeightFloor));
        }
    }
    return grad;
}

}  // namespace eae
