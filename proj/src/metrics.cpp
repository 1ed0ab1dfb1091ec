#include "eae/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eae/common.hpp"

namespace eae {

namespace {

constexpr std::size_t kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

std::vector<double> gaussian_kernel() {
    std::vector<double> kernel(kWindow);
    const double half = (kWindow - 1) / 2.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < kWindow; ++i) {
        const double d = static_cast<double>(i) - half;
        kernel[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        sum += kernel[i];
    }
    for (double& v : kernel) v /= sum;
    return kernel;
}

// Separable valid-mode convolution of an h x w plane with the 1-D kernel,
// producing (h-10) x (w-10) values.
std::vector<double> blur_valid(const double* plane, std::size_t h,
                               std::size_t w,
                               const std::vector<double>& kernel) {
    const std::size_t out_w = w - kWindow + 1;
    std::vector<double> rows(h * out_w, 0.0);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < kWindow; ++k) {
                acc += kernel[k] * plane[y * w + x + k];
            }
            rows[y * out_w + x] = acc;
        }
    }
    const std::size_t out_h = h - kWindow + 1;
    std::vector<double> out(out_h * out_w, 0.0);
    for (std::size_t y = 0; y < out_h; ++y) {
        for (std::size_t x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < kWindow; ++k) {
                acc += kernel[k] * rows[(y + k) * out_w + x];
            }
            out[y * out_w + x] = acc;
        }
    }
    return out;
}

double ssim_plane(const double* a, const double* b, std::size_t h,
                  std::size_t w) {
    static const std::vector<double> kernel = gaussian_kernel();
    const std::size_t n = h * w;

    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }

    const std::vector<double> mu_a = blur_valid(a, h, w, kernel);
    const std::vector<double> mu_b = blur_valid(b, h, w, kernel);
    const std::vector<double> e_aa = blur_valid(aa.data(), h, w, kernel);
    const std::vector<double> e_bb = blur_valid(bb.data(), h, w, kernel);
    const std::vector<double> e_ab = blur_valid(ab.data(), h, w, kernel);

    constexpr double c1 = kK1 * kK1;  // (K1 * L)^2 with L = 1
    constexpr double c2 = kK2 * kK2;
    double acc = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double va = e_aa[i] - mu_a[i] * mu_a[i];
        const double vb = e_bb[i] - mu_b[i] * mu_b[i];
        const double cov = e_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
        const double den =
            (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (va + vb + c2);
        acc += num / den;
    }
    return acc / static_cast<double>(mu_a.size());
}

void mean_and_std(const std::vector<double>& values, double& mean,
                  double& stddev) {
    mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    stddev = std::sqrt(var);
}

// Uniform binning over [lo, hi]; a degenerate range collapses to bin 0.
std::size_t uniform_bin(double v, double lo, double hi, std::size_t bins) {
    if (!(hi > lo)) return 0;
    const double t = (v - lo) / (hi - lo);
    return std::min(static_cast<std::size_t>(t * static_cast<double>(bins)),
                    bins - 1);
}

}  // namespace

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw shape_error("mse: size mismatch or empty input");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc / static_cast<double>(a.size());
}

double psnr(std::span<const double> a, std::span<const double> b,
            double peak) {
    const double err = mse(a, b);
    if (err == 0.0) return 99.0;
    return 10.0 * std::log10(peak * peak / err);
}

double ssim(const ImageBatch& a, const ImageBatch& b, std::size_t index) {
    require_same_shape(a, b, "ssim");
    if (index >= a.b) throw shape_error("ssim: sample index out of range");
    if (a.h < kWindow || a.w < kWindow) {
        throw config_error("ssim: image smaller than the 11x11 window");
    }
    const std::size_t plane = a.h * a.w;
    double acc = 0.0;
    for (std::size_t ci = 0; ci < a.c; ++ci) {
        const std::size_t offset = index * a.sample_size() + ci * plane;
        acc += ssim_plane(a.values.data() + offset, b.values.data() + offset,
                          a.h, a.w);
    }
    return acc / static_cast<double>(a.c);
}

std::vector<double> per_sample_mse(const ImageBatch& gt,
                                   const ImageBatch& recon) {
    require_same_shape(gt, recon, "per_sample_mse");
    std::vector<double> out(gt.b);
    for (std::size_t i = 0; i < gt.b; ++i) {
        out[i] = mse(gt.sample(i), recon.sample(i));
    }
    return out;
}

std::vector<double> per_sample_mae(const ImageBatch& gt,
                                   const ImageBatch& recon) {
    require_same_shape(gt, recon, "per_sample_mae");
    const std::size_t n = gt.sample_size();
    std::vector<double> out(gt.b);
    for (std::size_t i = 0; i < gt.b; ++i) {
        const double* x = gt.values.data() + i * n;
        const double* y = recon.values.data() + i * n;
        double acc = 0.0;
        for (std::size_t p = 0; p < n; ++p) acc += std::abs(x[p] - y[p]);
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

MetricsReport evaluate_metrics(const ImageBatch& gt, const ImageBatch& recon) {
    require_same_shape(gt, recon, "evaluate_metrics");
    if (gt.b == 0) throw domain_error("evaluate_metrics: empty batch");

    MetricsReport report;
    report.mse = per_sample_mse(gt, recon);
    report.mae = per_sample_mae(gt, recon);
    report.psnr.resize(gt.b);
    report.ssim.resize(gt.b);
    for (std::size_t i = 0; i < gt.b; ++i) {
        report.psnr[i] = psnr(gt.sample(i), recon.sample(i));
        report.ssim[i] = ssim(gt, recon, i);
    }
    mean_and_std(report.mse, report.mse_mean, report.mse_std);
    mean_and_std(report.psnr, report.psnr_mean, report.psnr_std);
    mean_and_std(report.ssim, report.ssim_mean, report.ssim_std);
    mean_and_std(report.mae, report.mae_mean, report.mae_std);
    return report;
}

SurpriseErrorAnalysis error_vs_surprise(const ImageBatch& batch,
                                        const ImageBatch& reconstruction,
                                        const SurprisalMap& map,
                                        std::size_t hist_bins) {
    require_same_shape(batch, reconstruction, "error_vs_surprise");
    require_same_shape(batch, map.raw, "error_vs_surprise");
    if (hist_bins == 0) {
        throw config_error("error_vs_surprise: need at least one bin");
    }

    SurpriseErrorAnalysis out;
    const std::size_t total = batch.size();
    out.surprise.resize(total);
    out.abs_error.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        out.surprise[i] = map.raw.values[i];
        out.abs_error[i] = std::abs(reconstruction.values[i] - batch.values[i]);
    }

    const auto fill_marginal = [&](const std::vector<double>& values,
                                   std::vector<double>& edges,
                                   std::vector<std::size_t>& hist) {
        const auto [lo_it, hi_it] =
            std::minmax_element(values.begin(), values.end());
        const double lo = *lo_it;
        const double hi = *hi_it;
        edges.resize(hist_bins + 1);
        for (std::size_t k = 0; k <= hist_bins; ++k) {
            edges[k] = lo + (hi - lo) * static_cast<double>(k) /
                                static_cast<double>(hist_bins);
        }
        hist.assign(hist_bins, 0);
        for (double v : values) ++hist[uniform_bin(v, lo, hi, hist_bins)];
    };
    fill_marginal(out.surprise, out.surprise_edges, out.surprise_hist);
    fill_marginal(out.abs_error, out.error_edges, out.error_hist);
    return out;
}

FrequencyErrorTable error_vs_frequency(const std::vector<double>& sample_errors,
                                       const RarityTable& table) {
    if (sample_errors.size() != table.bin.size()) {
        throw shape_error("error_vs_frequency: rarity table does not cover samples");
    }

    const std::size_t bins = table.bins();
    std::vector<double> sums(bins, 0.0);
    for (std::size_t i = 0; i < sample_errors.size(); ++i) {
        sums[table.bin[i]] += sample_errors[i];
    }

    FrequencyErrorTable out;
    std::size_t rarest = bins;   // occupied bin with the fewest members
    std::size_t commonest = bins;
    for (std::size_t k = 0; k < bins; ++k) {
        if (table.counts[k] == 0) continue;
        FrequencyErrorRow row;
        row.bin = k;
        row.count = table.counts[k];
        row.mean_error = sums[k] / static_cast<double>(table.counts[k]);
        out.rows.push_back(row);
        if (rarest == bins || table.counts[k] < table.counts[rarest]) {
            rarest = k;
        }
        if (commonest == bins || table.counts[k] > table.counts[commonest]) {
            commonest = k;
        }
    }
    if (out.rows.empty()) {
        throw domain_error("error_vs_frequency: no occupied bins");
    }

    const auto mean_of = [&](std::size_t k) {
        return sums[k] / static_cast<double>(table.counts[k]);
    };
    const double rare_err = mean_of(rarest);
    const double common_err = mean_of(commonest);
    if (common_err == 0.0) {
        out.flatness = rare_err == 0.0
                           ? 1.0
                           : std::numeric_limits<double>::infinity();
    } else {
        out.flatness = rare_err / common_err;
    }
    return out;
}

double rare_fraction_mean(const std::vector<double>& metric,
                          const RarityTable& table, double fraction) {
    if (metric.size() != table.order.size()) {
        throw shape_error("rare_fraction_mean: rarity table does not cover samples");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw domain_error("rare_fraction_mean: fraction outside (0, 1]");
    }
    const std::size_t n = metric.size();
    const std::size_t take = std::max<std::size_t>(
        1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
    double acc = 0.0;
    for (std::size_t r = 0; r < take; ++r) acc += metric[table.order[r]];
    return acc / static_cast<double>(take);
}

}  // namespace eae
