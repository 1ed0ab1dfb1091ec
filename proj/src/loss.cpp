#include "eae/loss.hpp"

#include <cmath>

#include "eae/common.hpp"

namespace eae {

std::string loss_kind_name(LossKind kind) {
    switch (kind) {
        case LossKind::l2: return "l2";
        case LossKind::l1: return "l1";
        case LossKind::entropy: return "entropy";
    }
    throw domain_error("loss_kind_name: unknown kind");
}

LossKind parse_loss_kind(const std::string& name) {
    if (name == "l2") return LossKind::l2;
    if (name == "l1") return LossKind::l1;
    if (name == "entropy") return LossKind::entropy;
    throw config_error("unknown loss kind '" + name +
                       "' (expected l2, l1 or entropy)");
}

std::vector<double> per_sample_losses(const LossSpec& spec,
                                      const ImageBatch& batch,
                                      const ImageBatch& reconstruction) {
    require_same_shape(batch, reconstruction, "per_sample_losses");
    if (spec.kind == LossKind::entropy) {
        return composite_loss(batch, reconstruction, spec.lambda, spec.bins,
                              spec.epsilon)
            .total;
    }

    const std::size_t n = batch.sample_size();
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> losses(batch.b);
    for (std::size_t bi = 0; bi < batch.b; ++bi) {
        const double* x = batch.values.data() + bi * n;
        const double* y = reconstruction.values.data() + bi * n;
        double acc = 0.0;
        if (spec.kind == LossKind::l2) {
            for (std::size_t i = 0; i < n; ++i) {
                const double diff = y[i] - x[i];
                acc += diff * diff;
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) acc += std::abs(y[i] - x[i]);
        }
        losses[bi] = acc * inv_n;
    }
    return losses;
}

ImageBatch loss_grad(const LossSpec& spec, const ImageBatch& batch,
                     const ImageBatch& reconstruction,
                     const std::vector<double>* sample_weights) {
    require_same_shape(batch, reconstruction, "loss_grad");
    if (sample_weights && sample_weights->size() != batch.b) {
        throw shape_error("loss_grad: weight count does not match batch size");
    }

    ImageBatch grad;
    if (spec.kind == LossKind::entropy) {
        grad = composite_loss_grad(batch, reconstruction, spec.lambda,
                                   spec.bins, spec.epsilon);
    } else {
        grad = ImageBatch::zeros(batch.b, batch.c, batch.h, batch.w);
        const std::size_t n = batch.sample_size();
        const double inv_n = 1.0 / static_cast<double>(n);
        const double inv_b = 1.0 / static_cast<double>(batch.b);
        for (std::size_t bi = 0; bi < batch.b; ++bi) {
            const double* x = batch.values.data() + bi * n;
            const double* y = reconstruction.values.data() + bi * n;
            double* g = grad.values.data() + bi * n;
            if (spec.kind == LossKind::l2) {
                for (std::size_t i = 0; i < n; ++i) {
                    g[i] = inv_b * inv_n * (2.0 * (y[i] - x[i]));
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    const double diff = y[i] - x[i];
                    const double sign =
                        diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
                    g[i] = inv_b * inv_n * sign;
                }
            }
        }
    }

    if (sample_weights) {
        const std::size_t n = grad.sample_size();
        for (std::size_t bi = 0; bi < grad.b; ++bi) {
            const double w = (*sample_weights)[bi];
            double* g = grad.values.data() + bi * n;
            for (std::size_t i = 0; i < n; ++i) g[i] *= w;
        }
    }
    return grad;
}

}  // namespace eae
