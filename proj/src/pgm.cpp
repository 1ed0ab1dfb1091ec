#include "eae/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

#include "eae/common.hpp"

namespace eae {

namespace {

std::uint8_t quantize(double v) {
    const double scaled = std::round(v * 255.0);
    if (scaled <= 0.0) return 0;
    if (scaled >= 255.0) return 255;
    return static_cast<std::uint8_t>(scaled);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::filesystem::path& path) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch)) {
        token.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (token.empty()) {
        throw io_error("read_pnm: truncated header in " + path.string());
    }
    return token;
}

std::size_t parse_dim(const std::string& token,
                      const std::filesystem::path& path) {
    std::size_t value = 0;
    for (char c : token) {
        if (c < '0' || c > '9') {
            throw io_error("read_pnm: bad header field '" + token + "' in " +
                           path.string());
        }
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

}  // namespace

void write_pnm(const std::filesystem::path& path, const ImageBatch& batch,
               std::size_t index) {
    if (index >= batch.b) {
        throw shape_error("write_pnm: sample index out of range");
    }
    if (batch.c != 1 && batch.c != 3) {
        throw io_error("write_pnm: only 1- or 3-channel images supported");
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("write_pnm: cannot open " + path.string());

    out << (batch.c == 1 ? "P5" : "P6") << "\n"
        << batch.w << " " << batch.h << "\n255\n";

    const std::size_t plane = batch.h * batch.w;
    const double* base = batch.values.data() + index * batch.sample_size();
    std::vector<std::uint8_t> row(batch.w * batch.c);
    for (std::size_t hi = 0; hi < batch.h; ++hi) {
        for (std::size_t wi = 0; wi < batch.w; ++wi) {
            for (std::size_t ci = 0; ci < batch.c; ++ci) {
                row[wi * batch.c + ci] =
                    quantize(base[ci * plane + hi * batch.w + wi]);
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw io_error("write_pnm: write failed for " + path.string());
}

ImageBatch read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("read_pnm: cannot open " + path.string());

    const std::string magic = next_token(in, path);
    std::size_t channels = 0;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else throw io_error("read_pnm: " + path.string() + " is not binary PGM/PPM");

    const std::size_t width = parse_dim(next_token(in, path), path);
    const std::size_t height = parse_dim(next_token(in, path), path);
    const std::size_t maxval = parse_dim(next_token(in, path), path);
    if (width == 0 || height == 0) {
        throw io_error("read_pnm: zero dimension in " + path.string());
    }
    if (maxval == 0 || maxval > 255) {
        throw io_error("read_pnm: unsupported max value " +
                       std::to_string(maxval) + " in " + path.string());
    }

    ImageBatch batch = ImageBatch::zeros(1, channels, height, width);
    const std::size_t plane = height * width;
    std::vector<std::uint8_t> row(width * channels);
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t hi = 0; hi < height; ++hi) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size()));
        if (!in) throw io_error("read_pnm: truncated pixel data in " +
                                path.string());
        for (std::size_t wi = 0; wi < width; ++wi) {
            for (std::size_t ci = 0; ci < channels; ++ci) {
                batch.values[ci * plane + hi * width + wi] =
                    static_cast<double>(row[wi * channels + ci]) * scale;
            }
        }
    }
    return batch;
}

}  // namespace eae
