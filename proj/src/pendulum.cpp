#include "eae/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eae/common.hpp"

namespace eae {

namespace {

struct BobCenter {
    double x;
    double y;
};

BobCenter bob_center(const PendulumParams& params, double theta) {
    return {params.pivot_x + params.rod_length * std::sin(theta),
            params.pivot_y + params.rod_length * std::cos(theta)};
}

void validate(const PendulumParams& params) {
    if (params.frames == 0) {
        throw config_error("pendulum: frame count must be positive");
    }
    if (params.height == 0 || params.width == 0) {
        throw config_error("pendulum: frame size must be positive");
    }
    if (params.gamma < 0.0) {
        throw config_error("pendulum: damping must be non-negative");
    }
    if (params.bob_radius <= 0.0 || params.rod_length <= 0.0) {
        throw config_error("pendulum: rod length and bob radius must be positive");
    }
    if (params.dt <= 0.0) {
        throw config_error("pendulum: dt must be positive");
    }
    if (params.noise_std < 0.0) {
        throw config_error("pendulum: noise level must be non-negative");
    }

    // Sweep the full reachable arc; the envelope never exceeds |theta0|.
    const double limit = std::abs(params.theta0);
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
        const double theta = -limit + 2.0 * limit * i / steps;
        const BobCenter c = bob_center(params, theta);
        if (c.x - params.bob_radius < 0.0 ||
            c.x + params.bob_radius > static_cast<double>(params.width) ||
            c.y - params.bob_radius < 0.0 ||
            c.y + params.bob_radius > static_cast<double>(params.height)) {
            throw config_error(
                "pendulum: bob leaves the frame at angle " + fmt_double(theta) +
                "; shrink rod_length/bob_radius or move the pivot");
        }
    }
}

double gaussian(Rng& rng) {
    // Box-Muller on the portable uniform; the pair's second half is dropped
    // to keep the draw count simple.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double point_segment_distance(double px, double py, double ax, double ay,
                              double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double cx = ax + t * dx;
    const double cy = ay + t * dy;
    return std::hypot(px - cx, py - cy);
}

}  // namespace

double pendulum_angle(const PendulumParams& params, std::size_t frame) {
    const double t = params.dt * static_cast<double>(frame);
    return params.theta0 * std::exp(-params.gamma * t) *
           std::cos(params.omega * t);
}

Dataset simulate_pendulum(const PendulumParams& params, std::uint64_t seed) {
    validate(params);

    Dataset dataset;
    dataset.n = params.frames;
    dataset.c = 1;
    dataset.h = params.height;
    dataset.w = params.width;
    dataset.source = "simulated";
    dataset.pixels.assign(dataset.n * dataset.sample_size(), 0.0);
    dataset.angles.resize(dataset.n);

    const double r2 = params.bob_radius * params.bob_radius;
    constexpr double rod_half_width = 0.5;

    for (std::size_t f = 0; f < params.frames; ++f) {
        const double theta = pendulum_angle(params, f);
        dataset.angles[f] = theta;
        const BobCenter c = bob_center(params, theta);
        double* frame = dataset.pixels.data() + f * dataset.sample_size();

        for (std::size_t hi = 0; hi < params.height; ++hi) {
            for (std::size_t wi = 0; wi < params.width; ++wi) {
                int covered = 0;
                for (int sy = 0; sy < 2; ++sy) {
                    for (int sx = 0; sx < 2; ++sx) {
                        const double px =
                            static_cast<double>(wi) + 0.25 + 0.5 * sx;
                        const double py =
                            static_cast<double>(hi) + 0.25 + 0.5 * sy;
                        const double dx = px - c.x;
                        const double dy = py - c.y;
                        bool hit = dx * dx + dy * dy <= r2;
                        if (!hit && params.draw_rod) {
                            hit = point_segment_distance(
                                      px, py, params.pivot_x, params.pivot_y,
                                      c.x, c.y) <= rod_half_width;
                        }
                        covered += hit ? 1 : 0;
                    }
                }
                frame[hi * params.width + wi] = covered / 4.0;
            }
        }
    }

    if (params.noise_std > 0.0) {
        Rng rng(mix_seed(seed, 0));
        for (double& v : dataset.pixels) {
            v = std::clamp(v + params.noise_std * gaussian(rng), 0.0, 1.0);
        }
    }
    return dataset;
}

}  // namespace eae
