#include "eae/report.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "eae/common.hpp"
#include "eae/entropy.hpp"
#include "eae/metrics.hpp"
#include "eae/pgm.hpp"

namespace eae {

namespace {

constexpr std::size_t kDumpCount = 8;

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write " + path.string());
    return out;
}

std::string padded(std::size_t value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

void dump_sample(const std::filesystem::path& dir, const std::string& tag,
                 std::size_t rank, std::size_t index, const ImageBatch& gt,
                 const ImageBatch& recon, const ImageBatch* mask) {
    const std::string stem = tag + "_" + padded(rank, 2) + "_idx" +
                             padded(index, 5);
    write_pnm(dir / (stem + "_gt.pgm"), gt, index);
    write_pnm(dir / (stem + "_recon.pgm"), recon, index);
    if (mask) write_pnm(dir / (stem + "_mask.pgm"), *mask, index);
}

}  // namespace

void write_evaluation_report(const std::filesystem::path& dir,
                             const ExperimentConfig& config,
                             const Dataset& dataset,
                             const MlpAutoencoder& model) {
    if (model.input_dim() != dataset.sample_size()) {
        throw config_error(
            "checkpoint expects " + std::to_string(model.input_dim()) +
            " inputs but the dataset has " +
            std::to_string(dataset.sample_size()) + " pixels per frame");
    }
    std::filesystem::create_directories(dir);
    const std::filesystem::path image_dir = dir / "images";
    std::filesystem::create_directories(image_dir);

    const ImageBatch gt = dataset.full_batch();
    const ImageBatch recon = reconstruct(model, gt);
    const MetricsReport metrics = evaluate_metrics(gt, recon);
    const RarityTable rarity = rarity_bins(dataset, config.dataset.rarity_bins);
    const FrequencyErrorTable frequency =
        error_vs_frequency(metrics.mae, rarity);
    const double rare10_mse = rare_fraction_mean(metrics.mse, rarity, 0.1);

    // The diagnostic surprisal treats the entire dataset as one batch.
    const SurprisalMap surprise_map =
        compute_surprisal(gt, config.loss.bins, config.loss.epsilon);
    const SurpriseErrorAnalysis surprise =
        error_vs_surprise(gt, recon, surprise_map);

    {
        auto out = open_csv(dir / "summary.csv");
        out << "metric,value\n";
        out << "samples," << dataset.n << "\n";
        out << "mse_mean," << fmt_double(metrics.mse_mean) << "\n";
        out << "mse_std," << fmt_double(metrics.mse_std) << "\n";
        out << "psnr_mean," << fmt_double(metrics.psnr_mean) << "\n";
        out << "psnr_std," << fmt_double(metrics.psnr_std) << "\n";
        out << "ssim_mean," << fmt_double(metrics.ssim_mean) << "\n";
        out << "ssim_std," << fmt_double(metrics.ssim_std) << "\n";
        out << "mae_mean," << fmt_double(metrics.mae_mean) << "\n";
        out << "mae_std," << fmt_double(metrics.mae_std) << "\n";
        out << "rare10_mse," << fmt_double(rare10_mse) << "\n";
        out << "flatness," << fmt_double(frequency.flatness) << "\n";
    }

    {
        auto out = open_csv(dir / "metrics.csv");
        out << "index,statistic,bin,bin_count,mse,psnr,ssim,mae\n";
        for (std::size_t i = 0; i < dataset.n; ++i) {
            out << i << ',' << fmt_double(rarity.statistic[i]) << ','
                << rarity.bin[i] << ',' << rarity.sample_count[i] << ','
                << fmt_double(metrics.mse[i]) << ','
                << fmt_double(metrics.psnr[i]) << ','
                << fmt_double(metrics.ssim[i]) << ','
                << fmt_double(metrics.mae[i]) << '\n';
        }
        out << "mean,,,," << fmt_double(metrics.mse_mean) << ','
            << fmt_double(metrics.psnr_mean) << ','
            << fmt_double(metrics.ssim_mean) << ','
            << fmt_double(metrics.mae_mean) << '\n';
        out << "std,,,," << fmt_double(metrics.mse_std) << ','
            << fmt_double(metrics.psnr_std) << ','
            << fmt_double(metrics.ssim_std) << ','
            << fmt_double(metrics.mae_std) << '\n';
    }

    {
        auto out = open_csv(dir / "frequency_error.csv");
        out << "bin,edge_lo,edge_hi,count,mean_abs_error\n";
        for (const FrequencyErrorRow& row : frequency.rows) {
            out << row.bin << ',' << fmt_double(rarity.edges[row.bin]) << ','
                << fmt_double(rarity.edges[row.bin + 1]) << ',' << row.count
                << ',' << fmt_double(row.mean_error) << '\n';
        }
    }

    {
        auto out = open_csv(dir / "surprise_error_marginals.csv");
        out << "axis,edge_lo,edge_hi,count\n";
        for (std::size_t k = 0; k < surprise.surprise_hist.size(); ++k) {
            out << "surprise," << fmt_double(surprise.surprise_edges[k]) << ','
                << fmt_double(surprise.surprise_edges[k + 1]) << ','
                << surprise.surprise_hist[k] << '\n';
        }
        for (std::size_t k = 0; k < surprise.error_hist.size(); ++k) {
            out << "abs_error," << fmt_double(surprise.error_edges[k]) << ','
                << fmt_double(surprise.error_edges[k + 1]) << ','
                << surprise.error_hist[k] << '\n';
        }
    }

    {
        // Joint 2-D histogram instead of one row per pixel; the marginals
        // above stay exact.
        const std::size_t bins = surprise.surprise_hist.size();
        std::vector<std::size_t> joint(bins * bins, 0);
        const double s_lo = surprise.surprise_edges.front();
        const double s_hi = surprise.surprise_edges.back();
        const double e_lo = surprise.error_edges.front();
        const double e_hi = surprise.error_edges.back();
        const auto bin_of = [bins](double v, double lo, double hi) {
            if (!(hi > lo)) return std::size_t{0};
            const double t = (v - lo) / (hi - lo);
            return std::min(
                static_cast<std::size_t>(t * static_cast<double>(bins)),
                bins - 1);
        };
        for (std::size_t i = 0; i < surprise.surprise.size(); ++i) {
            const std::size_t sb = bin_of(surprise.surprise[i], s_lo, s_hi);
            const std::size_t eb = bin_of(surprise.abs_error[i], e_lo, e_hi);
            ++joint[sb * bins + eb];
        }
        auto out = open_csv(dir / "surprise_error_joint.csv");
        out << "surprise_bin,error_bin,count\n";
        for (std::size_t sb = 0; sb < bins; ++sb) {
            for (std::size_t eb = 0; eb < bins; ++eb) {
                const std::size_t count = joint[sb * bins + eb];
                if (count == 0) continue;
                out << sb << ',' << eb << ',' << count << '\n';
            }
        }
    }

    {
        auto out = open_csv(dir / "manifest_ref.csv");
        out << "index,statistic,bin,count\n";
        for (std::size_t i = 0; i < dataset.n; ++i) {
            out << i << ',' << fmt_double(rarity.statistic[i]) << ','
                << rarity.bin[i] << ',' << rarity.sample_count[i] << '\n';
        }
    }

    const bool entropy_mode = config.loss.kind == LossKind::entropy;
    if (entropy_mode) {
        const LossBreakdown breakdown =
            composite_loss(gt, recon, config.loss.lambda, config.loss.bins,
                           config.loss.epsilon);
        auto out = open_csv(dir / "loss_breakdown.csv");
        out << "index,ent,mse,total\n";
        for (std::size_t i = 0; i < dataset.n; ++i) {
            out << i << ',' << fmt_double(breakdown.ent[i]) << ','
                << fmt_double(breakdown.mse[i]) << ','
                << fmt_double(breakdown.total[i]) << '\n';
        }
    }

    const std::size_t dump = std::min<std::size_t>(kDumpCount, dataset.n);
    const ImageBatch* mask = entropy_mode ? &surprise_map.mask : nullptr;
    for (std::size_t r = 0; r < dump; ++r) {
        dump_sample(image_dir, "rare", r, rarity.order[r], gt, recon, mask);
        dump_sample(image_dir, "common", r,
                    rarity.order[dataset.n - 1 - r], gt, recon, mask);
    }
}

}  // namespace eae
