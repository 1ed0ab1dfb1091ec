#pragma once

#include <cstddef>
#include <cstdint>

#include "eae/dataset.hpp"

namespace eae {

// Damped pendulum rendered as a bright bob on a black background. The angle
// follows theta(t) = theta0 * exp(-gamma t) * cos(omega t), measured from
// the downward vertical; the bob hangs from a fixed pivot.
struct PendulumParams {
    double omega = 0.3;    // rad per time unit
    double gamma = 0.02;   // damping rate, 1/time
    double theta0 = 1.2;   // initial angle, rad
    double dt = 1.0;       // time per frame
    std::size_t frames = 500;
    std::size_t height = 64;
    std::size_t width = 64;
    double rod_length = 24.0;  // pixels
    double bob_radius = 3.0;   // pixels
    double pivot_x = 32.0;     // pixels, from left
    double pivot_y = 10.0;     // pixels, from top
    bool draw_rod = false;
    double noise_std = 0.0;    // additive Gaussian, clamped to [0,1]

    bool operator==(const PendulumParams&) const = default;
};

// Analytic angle at frame t; exposed so tests can bin occupancy without
// rendering.
double pendulum_angle(const PendulumParams& params, std::size_t frame);

// Renders all frames with 2x2 supersampling. The seed only matters when
// noise_std > 0. Throws a configuration error if the bob could leave the
// frame anywhere on |theta| <= |theta0|.
Dataset simulate_pendulum(const PendulumParams& params, std::uint64_t seed);

}  // namespace eae
