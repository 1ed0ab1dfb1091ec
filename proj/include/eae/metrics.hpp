#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eae/dataset.hpp"
#include "eae/entropy.hpp"
#include "eae/image_batch.hpp"

namespace eae {

double mse(std::span<const double> a, std::span<const double> b);

// 10 * log10(peak^2 / mse); an exact-zero mse reports the 99 dB cap so CSV
// values stay finite.
double psnr(std::span<const double> a, std::span<const double> b,
            double peak = 1.0);

// Windowed structural similarity between sample `index` of both batches:
// 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, dynamic range 1,
// valid positions only, averaged over channels.
double ssim(const ImageBatch& a, const ImageBatch& b, std::size_t index);

std::vector<double> per_sample_mse(const ImageBatch& gt,
                                   const ImageBatch& recon);
std::vector<double> per_sample_mae(const ImageBatch& gt,
                                   const ImageBatch& recon);

// Per-sample reconstruction quality plus population mean/std aggregates.
struct MetricsReport {
    std::vector<double> mse;
    std::vector<double> psnr;
    std::vector<double> ssim;
    std::vector<double> mae;
    double mse_mean = 0.0, mse_std = 0.0;
    double psnr_mean = 0.0, psnr_std = 0.0;
    double ssim_mean = 0.0, ssim_std = 0.0;
    double mae_mean = 0.0, mae_std = 0.0;
};

MetricsReport evaluate_metrics(const ImageBatch& gt, const ImageBatch& recon);

// Per-pixel (surprise, |error|) pairs with marginal histograms, the raw
// material behind the surprise-against-error diagnostic.
struct SurpriseErrorAnalysis {
    std::vector<double> surprise;   // one per pixel
    std::vector<double> abs_error;  // one per pixel
    std::vector<double> surprise_edges;
    std::vector<std::size_t> surprise_hist;
    std::vector<double> error_edges;
    std::vector<std::size_t> error_hist;
};

SurpriseErrorAnalysis error_vs_surprise(const ImageBatch& batch,
                                        const ImageBatch& reconstruction,
                                        const SurprisalMap& map,
                                        std::size_t hist_bins = 32);

// Mean absolute error per occupancy bin. Empty bins are absent rather than
// zero. Flatness = rarest occupied bin's error / commonest occupied bin's
// error; 1 means error does not depend on frequency.
struct FrequencyErrorRow {
    std::size_t bin = 0;
    std::size_t count = 0;
    double mean_error = 0.0;
};

struct FrequencyErrorTable {
    std::vector<FrequencyErrorRow> rows;
    double flatness = 1.0;
};

FrequencyErrorTable error_vs_frequency(const std::vector<double>& sample_errors,
                                       const RarityTable& table);

// Mean of `metric` over the floor(fraction * n) samples in the rarest bins
// (at least one sample).
double rare_fraction_mean(const std::vector<double>& metric,
                          const RarityTable& table, double fraction);

}  // namespace eae
