#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "eae/image_batch.hpp"

namespace eae {

// An immutable stack of same-sized frames with intensities in [0, 1].
// Simulated datasets carry per-frame angle labels; folder datasets do not.
struct Dataset {
    std::size_t n = 0;
    std::size_t c = 0;
    std::size_t h = 0;
    std::size_t w = 0;
    std::vector<double> pixels;  // n * c * h * w, sample-major
    std::vector<double> angles;  // empty when no labels exist
    std::string source;          // "simulated" or "folder"

    std::size_t sample_size() const { return c * h * w; }
    bool has_angles() const { return angles.size() == n; }

    ImageBatch gather(const std::vector<std::size_t>& rows) const;
    ImageBatch full_batch() const;
};

// Occupancy statistics used to decide which samples are underrepresented.
// Bins are uniform over the per-sample statistic (angle when labeled,
// otherwise mean absolute deviation from the dataset-mean frame).
struct RarityTable {
    std::vector<double> edges;              // bins + 1 edges
    std::vector<double> statistic;          // per sample
    std::vector<std::size_t> bin;           // per sample
    std::vector<std::size_t> counts;        // per bin, sums to n
    std::vector<std::size_t> sample_count;  // per sample: count of its bin
    std::vector<std::size_t> order;         // sample ids, rarest bin first

    std::size_t bins() const { return counts.size(); }
};

Dataset load_image_folder(const std::filesystem::path& path);

RarityTable rarity_bins(const Dataset& dataset, std::size_t n_bins);

// Deterministic shuffled epoch: a fresh permutation per (seed, epoch),
// chopped into floor(n / batch) full batches; the tail is dropped.
std::vector<std::vector<std::size_t>> epoch_batches(std::size_t n,
                                                    std::size_t batch,
                                                    std::uint64_t seed,
                                                    std::size_t epoch);

}  // namespace eae
