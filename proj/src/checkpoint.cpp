#include "eae/checkpoint.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace eae {

namespace {

constexpr std::array<char, 8> kMagic = {'E', 'A', 'E', 'C', 'K', 'P', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& in) {
    const std::uint64_t bits = get_u64(in);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

}  // namespace

void save_checkpoint(const MlpAutoencoder& model, const std::filesystem::path& path) {
    for (const Layer& layer : model.layers) {
        if (!all_finite(layer.weight.values) || !all_finite(layer.bias)) {
            throw domain_error("save_checkpoint: model contains non-finite parameters");
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("save_checkpoint: cannot open " + path.string());

    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(model.layers.size()));
    put_u64(out, model.seed);
    put_u32(out, static_cast<std::uint32_t>(model.widths.size()));
    for (std::size_t w : model.widths) put_u32(out, static_cast<std::uint32_t>(w));
    for (const Layer& layer : model.layers) put_u32(out, static_cast<std::uint32_t>(layer.act));
    for (const Layer& layer : model.layers) {
        for (double v : layer.weight.values) put_f64(out, v);
        for (double v : layer.bias) put_f64(out, v);
    }
    if (!out) throw io_error("save_checkpoint: write failed for " + path.string());
}

MlpAutoencoder load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("load_checkpoint: cannot open " + path.string());

    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw io_error("load_checkpoint: " + path.string() + " is not a model checkpoint");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kVersion) {
        throw io_error("load_checkpoint: unsupported checkpoint version " +
                       std::to_string(version));
    }

    MlpAutoencoder model;
    const std::uint32_t layer_count = get_u32(in);
    model.seed = get_u64(in);
    const std::uint32_t width_count = get_u32(in);
    if (width_count != layer_count + 1) {
        throw io_error("load_checkpoint: corrupt width table in " + path.string());
    }
    model.widths.resize(width_count);
    for (auto& w : model.widths) w = get_u32(in);

    std::vector<Activation> acts(layer_count);
    for (auto& a : acts) {
        const std::uint32_t tag = get_u32(in);
        if (tag > 2) throw io_error("load_checkpoint: unknown activation tag");
        a = static_cast<Activation>(tag);
    }

    for (std::uint32_t i = 0; i < layer_count; ++i) {
        Layer layer;
        layer.weight = DenseMatrix::zeros(model.widths[i], model.widths[i + 1]);
        for (double& v : layer.weight.values) v = get_f64(in);
        layer.bias.resize(model.widths[i + 1]);
        for (double& v : layer.bias) v = get_f64(in);
        layer.act = acts[i];
        model.layers.push_back(std::move(layer));
    }
    if (!in) throw io_error("load_checkpoint: truncated file " + path.string());
    return model;
}

}  // namespace eae
