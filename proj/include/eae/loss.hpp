#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eae/entropy.hpp"
#include "eae/image_batch.hpp"

namespace eae {

enum class LossKind { l2, l1, entropy };

std::string loss_kind_name(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

// Which reconstruction objective a run optimizes. lambda, bins and epsilon
// only matter for the entropy kind.
struct LossSpec {
    LossKind kind = LossKind::l2;
    double lambda = 1.0;
    std::size_t bins = 32;
    double epsilon = 1e-8;

    bool operator==(const LossSpec&) const = default;
};

// Per-sample loss values under the spec's kind. Used for ranking, focal
// weighting and logging.
std::vector<double> per_sample_losses(const LossSpec& spec,
                                      const ImageBatch& batch,
                                      const ImageBatch& reconstruction);

// Gradient of the batch-mean loss with respect to the reconstruction.
// When sample_weights is given (length B), sample bi's gradient rows are
// scaled by sample_weights[bi]; the weights carry no gradient themselves.
ImageBatch loss_grad(const LossSpec& spec, const ImageBatch& batch,
                     const ImageBatch& reconstruction,
                     const std::vector<double>* sample_weights = nullptr);

}  // namespace eae
