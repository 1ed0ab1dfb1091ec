#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eae {

// Invalid user-supplied configuration or precondition (CLI exit code 1).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tensor/model dimension disagreement.
struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value outside its mathematical domain (e.g. intensity outside [0,1]).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File ingestion / emission failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

// Standard-library distributions are implementation-defined, so everything
// that must reproduce deterministically maps raw engine output itself.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// Fisher-Yates with uniform_below; portable replacement for std::shuffle.
void shuffle_indices(std::vector<std::size_t>& values, Rng& rng);

// Independent stream per (seed, stream) pair.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

bool all_finite(std::span<const double> values);

// Shortest decimal digits that round-trip a double ("%.17g", '.' decimal point).
std::string fmt_double(double value);

}  // namespace eae
