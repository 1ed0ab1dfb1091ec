#include "eae/image_batch.hpp"

#include <algorithm>
#include <string>

namespace eae {

ImageBatch ImageBatch::zeros(std::size_t b, std::size_t c, std::size_t h, std::size_t w) {
    ImageBatch out;
    out.b = b;
    out.c = c;
    out.h = h;
    out.w = w;
    out.values.assign(b * c * h * w, 0.0);
    return out;
}

void require_same_shape(const ImageBatch& a, const ImageBatch& batch, const char* op) {
    if (!a.same_shape(batch)) {
        throw shape_error(std::string(op) + ": batch shapes differ (" + std::to_string(a.b) + "," +
                          std::to_string(a.c) + "," + std::to_string(a.h) + "," +
                          std::to_string(a.w) + ") vs (" + std::to_string(batch.b) + "," +
                          std::to_string(batch.c) + "," + std::to_string(batch.h) + "," +
                          std::to_string(batch.w) + ")");
    }
}

void require_unit_range(const ImageBatch& batch, const char* op) {
    for (double v : batch.values) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw domain_error(std::string(op) + ": intensity " + fmt_double(v) +
                               " outside [0,1]");
        }
    }
}

ImageBatch gather_samples(const ImageBatch& src, std::span<const std::size_t> rows) {
    ImageBatch out = ImageBatch::zeros(rows.size(), src.c, src.h, src.w);
    const std::size_t n = src.sample_size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto from = src.sample(rows[i]);
        std::copy(from.begin(), from.end(), out.values.begin() + i * n);
    }
    return out;
}

}  // namespace eae
