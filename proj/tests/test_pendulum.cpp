#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eae/common.hpp"
#include "eae/pendulum.hpp"

using namespace eae;

TEST_CASE("the angle starts at theta0 and decays inside the envelope") {
    PendulumParams params;
    CHECK(pendulum_angle(params, 0) == params.theta0);
    for (std::size_t f = 0; f < params.frames; ++f) {
        const double t = params.dt * static_cast<double>(f);
        const double envelope = params.theta0 * std::exp(-params.gamma * t);
        CHECK(std::abs(pendulum_angle(params, f)) <= envelope + 1e-12);
    }
}

TEST_CASE("an undamped pendulum is periodic") {
    PendulumParams params;
    params.gamma = 0.0;
    params.omega = std::numbers::pi / 8.0;  // period of 16 frames
    params.frames = 17;
    const Dataset dataset = simulate_pendulum(params, 0);
    CHECK(dataset.angles[16] == doctest::Approx(dataset.angles[0]).epsilon(1e-12));
    const std::size_t n = dataset.sample_size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(dataset.pixels[16 * n + i] == dataset.pixels[i]);
    }
}

TEST_CASE("rendered frames are dark fields with a bright bob in range") {
    PendulumParams params;
    params.frames = 30;
    const Dataset dataset = simulate_pendulum(params, 0);
    CHECK(dataset.n == 30);
    CHECK(dataset.c == 1);
    CHECK(dataset.h == 64);
    CHECK(dataset.w == 64);
    CHECK(dataset.source == "simulated");
    CHECK(dataset.has_angles());

    const std::size_t n = dataset.sample_size();
    for (std::size_t f = 0; f < dataset.n; ++f) {
        double lo = 1.0;
        double hi = 0.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = dataset.pixels[f * n + i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        CHECK(lo >= 0.0);
        CHECK(hi <= 1.0);
        CHECK(hi > 0.5);                                 // the bob is lit
        CHECK(sum / static_cast<double>(n) < 0.1);       // background dominates
    }
}

TEST_CASE("near-rest angles dominate the occupancy histogram") {
    PendulumParams params;
    const Dataset dataset = simulate_pendulum(params, 0);
    const RarityTable table = rarity_bins(dataset, 20);
    REQUIRE(table.bin.size() == dataset.n);

    // Frame 0 sits at the full deflection that damping never revisits;
    // late frames hover around zero.
    const std::size_t extreme_bin = table.bin[0];
    const std::size_t rest_bin = table.bin[dataset.n - 1];
    CHECK(extreme_bin != rest_bin);
    CHECK(table.counts[extreme_bin] < table.counts[rest_bin]);

    // The rarity order leads with a frame from a sparsely occupied bin at a
    // wide deflection angle.
    const std::size_t rarest = table.order.front();
    for (std::size_t i = 0; i < dataset.n; ++i) {
        CHECK(table.sample_count[rarest] <= table.sample_count[i]);
    }
    CHECK(std::abs(table.statistic[rarest]) > 0.4);
}

TEST_CASE("rendering is deterministic, with and without noise") {
    PendulumParams params;
    params.frames = 12;

    const Dataset a = simulate_pendulum(params, 5);
    const Dataset b = simulate_pendulum(params, 9);
    CHECK(a.pixels == b.pixels);  // seed is inert without noise
    CHECK(a.angles == b.angles);

    params.noise_std = 0.05;
    const Dataset n1 = simulate_pendulum(params, 5);
    const Dataset n2 = simulate_pendulum(params, 5);
    const Dataset n3 = simulate_pendulum(params, 6);
    CHECK(n1.pixels == n2.pixels);
    CHECK(n1.pixels != n3.pixels);
    CHECK(n1.pixels != a.pixels);
    for (double v : n1.pixels) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("drawing the rod lights additional pixels") {
    PendulumParams params;
    params.frames = 3;
    const Dataset bare = simulate_pendulum(params, 0);
    params.draw_rod = true;
    const Dataset with_rod = simulate_pendulum(params, 0);
    double bare_sum = 0.0;
    double rod_sum = 0.0;
    for (double v : bare.pixels) bare_sum += v;
    for (double v : with_rod.pixels) rod_sum += v;
    CHECK(rod_sum > bare_sum);
}

TEST_CASE("geometry that swings out of frame is rejected") {
    PendulumParams params;
    params.rod_length = 40.0;  // leaves the left edge near full deflection
    CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
}

TEST_CASE("parameter validation") {
    PendulumParams params;
    SUBCASE("no frames") {
        params.frames = 0;
        CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
    }
    SUBCASE("non-positive dt") {
        params.dt = 0.0;
        CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
    }
    SUBCASE("negative damping") {
        params.gamma = -0.1;
        CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
    }
    SUBCASE("negative noise") {
        params.noise_std = -0.01;
        CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
    }
    SUBCASE("degenerate bob") {
        params.bob_radius = 0.0;
        CHECK_THROWS_AS(simulate_pendulum(params, 0), config_error);
    }
}
