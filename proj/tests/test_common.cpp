#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>

#include "doctest.h"
#include "eae/common.hpp"

using namespace eae;

TEST_CASE("uniform01 stays in [0,1) and reproduces per seed") {
    Rng a(42), b(42);
    for (int i = 0; i < 10000; ++i) {
        const double v = uniform01(a);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        CHECK(v == uniform01(b));
    }
}

TEST_CASE("uniform_below respects the bound and hits every value") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = uniform_below(rng, 5);
        CHECK(v < 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("shuffle_indices produces a permutation, deterministically") {
    std::vector<std::size_t> a(50), b(50);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);

    Rng ra(11), rb(11);
    shuffle_indices(a, ra);
    shuffle_indices(b, rb);
    CHECK(a == b);

    std::vector<std::size_t> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);

    std::vector<std::size_t> c(50);
    std::iota(c.begin(), c.end(), 0);
    Rng rc(12);
    shuffle_indices(c, rc);
    CHECK(c != a);
}

TEST_CASE("mix_seed separates streams") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(3, 5) == mix_seed(3, 5));
}

TEST_CASE("fmt_double round-trips exactly") {
    for (double v : {0.1, 0.3, 1.0 / 3.0, 1e-8, 1e300, -2.5e-17, 0.0, -1.25,
                     99.0, 0.29999999999999999}) {
        const std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("all_finite flags NaN and infinity") {
    std::vector<double> good = {0.0, -1.0, 1e308};
    CHECK(all_finite(good));
    std::vector<double> with_nan = {0.0, std::nan("")};
    CHECK_FALSE(all_finite(with_nan));
    std::vector<double> with_inf = {std::numeric_limits<double>::infinity()};
    CHECK_FALSE(all_finite(with_inf));
}
