#include "eae/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eae/common.hpp"
#include "eae/pgm.hpp"

namespace eae {

ImageBatch Dataset::gather(const std::vector<std::size_t>& rows) const {
    ImageBatch batch = ImageBatch::zeros(rows.size(), c, h, w);
    const std::size_t size = sample_size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= n) throw shape_error("Dataset::gather: index out of range");
        std::copy(pixels.begin() + rows[i] * size,
                  pixels.begin() + (rows[i] + 1) * size,
                  batch.values.begin() + i * size);
    }
    return batch;
}

ImageBatch Dataset::full_batch() const {
    ImageBatch batch = ImageBatch::zeros(n, c, h, w);
    batch.values = pixels;
    return batch;
}

Dataset load_image_folder(const std::filesystem::path& path) {
    if (!std::filesystem::is_directory(path)) {
        throw io_error("load_image_folder: " + path.string() +
                       " is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) {
        throw io_error("load_image_folder: no PGM/PPM images in " +
                       path.string());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) {
                  return a.filename().string() < b.filename().string();
              });

    Dataset dataset;
    dataset.source = "folder";
    for (const auto& file : files) {
        const ImageBatch image = read_pnm(file);
        if (dataset.n == 0) {
            dataset.c = image.c;
            dataset.h = image.h;
            dataset.w = image.w;
        } else if (image.c != dataset.c || image.h != dataset.h ||
                   image.w != dataset.w) {
            throw io_error("load_image_folder: " + file.string() +
                           " has a different size than the first image");
        }
        dataset.pixels.insert(dataset.pixels.end(), image.values.begin(),
                              image.values.end());
        ++dataset.n;
    }
    return dataset;
}

namespace {

// Per-sample occupancy statistic for unlabeled data: mean absolute
// deviation from the dataset-mean frame.
std::vector<double> deviation_statistic(const Dataset& dataset) {
    const std::size_t size = dataset.sample_size();
    std::vector<double> mean(size, 0.0);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const double* sample = dataset.pixels.data() + i * size;
        for (std::size_t p = 0; p < size; ++p) mean[p] += sample[p];
    }
    for (double& v : mean) v /= static_cast<double>(dataset.n);

    std::vector<double> stat(dataset.n, 0.0);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        const double* sample = dataset.pixels.data() + i * size;
        double acc = 0.0;
        for (std::size_t p = 0; p < size; ++p) {
            acc += std::abs(sample[p] - mean[p]);
        }
        stat[i] = acc / static_cast<double>(size);
    }
    return stat;
}

}  // namespace

RarityTable rarity_bins(const Dataset& dataset, std::size_t n_bins) {
    if (n_bins < 2) {
        throw config_error("rarity_bins: need at least 2 bins, got " +
                           std::to_string(n_bins));
    }
    if (dataset.n == 0) throw domain_error("rarity_bins: empty dataset");

    RarityTable table;
    table.statistic = dataset.has_angles() ? dataset.angles
                                           : deviation_statistic(dataset);

    const auto [lo_it, hi_it] =
        std::minmax_element(table.statistic.begin(), table.statistic.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    table.edges.resize(n_bins + 1);
    for (std::size_t k = 0; k <= n_bins; ++k) {
        table.edges[k] = lo + (hi - lo) * static_cast<double>(k) /
                                  static_cast<double>(n_bins);
    }

    table.bin.resize(dataset.n);
    table.counts.assign(n_bins, 0);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        std::size_t k = 0;
        if (hi > lo) {
            const double t = (table.statistic[i] - lo) / (hi - lo);
            k = std::min(static_cast<std::size_t>(
                             t * static_cast<double>(n_bins)),
                         n_bins - 1);
        }
        table.bin[i] = k;
        ++table.counts[k];
    }

    table.sample_count.resize(dataset.n);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        table.sample_count[i] = table.counts[table.bin[i]];
    }

    table.order.resize(dataset.n);
    std::iota(table.order.begin(), table.order.end(), 0);
    std::sort(table.order.begin(), table.order.end(),
              [&](std::size_t a, std::size_t b) {
                  if (table.sample_count[a] != table.sample_count[b]) {
                      return table.sample_count[a] < table.sample_count[b];
                  }
                  return a < b;
              });
    return table;
}

std::vector<std::vector<std::size_t>> epoch_batches(std::size_t n,
                                                    std::size_t batch,
                                                    std::uint64_t seed,
                                                    std::size_t epoch) {
    if (batch == 0) throw config_error("epoch_batches: batch size must be positive");
    if (batch > n) {
        throw config_error("epoch_batches: batch size " + std::to_string(batch) +
                           " exceeds dataset size " + std::to_string(n));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(epoch)));
    shuffle_indices(perm, rng);
    const std::size_t count = n / batch;
    std::vector<std::vector<std::size_t>> batches(count);
    for (std::size_t bi = 0; bi < count; ++bi) {
        batches[bi].assign(perm.begin() + bi * batch,
                           perm.begin() + (bi + 1) * batch);
    }
    return batches;
}

}  // namespace eae
