#include "btoric/kernels.hpp"
#include "btoric/surface_lab.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

using namespace btoric;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("grid max: serial and omp agree bit for bit") {
    std::mt19937_64 rng(601);
    for (int i = 0; i < 50; ++i) {
        std::size_t nx = 1 + rng() % 300, ny = 1 + rng() % 300;
        double a = std::uniform_real_distribution<double>(-3, 3)(rng);
        auto f = [a](std::size_t x, std::size_t y) { return std::sin(a * x + 0.37 * y) * std::log1p(x * y); };
        CHECK(same_bits(kernels::serial::max_over_grid(nx, ny, f), kernels::omp::max_over_grid(nx, ny, f)));
    }
    auto with_nan = [](std::size_t x, std::size_t y) {
        return x == 7 && y == 3 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    CHECK(std::isinf(kernels::serial::max_over_grid(20, 20, with_nan)));
    CHECK(std::isinf(kernels::omp::max_over_grid(20, 20, with_nan)));
    CHECK(kernels::serial::max_over_grid(0, 5, with_nan) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("index map: serial and omp agree bit for bit") {
    auto f = [](std::size_t i) { return std::exp(-1e-3 * i) * std::cos(0.1 * i); };
    for (std::size_t n : {0u, 1u, 17u, 1000u, 100000u}) {
        auto s = kernels::serial::map_indices(n, f);
        auto p = kernels::omp::map_indices(n, f);
        REQUIRE(s.size() == p.size());
        bool same = true;
        for (std::size_t i = 0; i < n; ++i) same = same && same_bits(s[i], p[i]);
        CHECK(same);
        CHECK(same_bits(kernels::ordered_sum(s), kernels::ordered_sum(p)));
    }
    CHECK(kernels::max_threads() >= 1);
}

TEST_CASE("volume: parallel and serial quadrature agree bit for bit") {
    auto cfg = surface::QuadratureConfig::defaults();
    auto serial = cfg;
    serial.parallel = false;
    for (const auto& m : {surface::sphere_pole_model(1.0, {1.0}), surface::torus_sine_model(0.7)}) {
        auto a = surface::liouville_volume(m, cfg);
        auto b = surface::liouville_volume(m, serial);
        CHECK(same_bits(a.value, b.value));
        REQUIRE(a.truncated.size() == b.truncated.size());
        for (std::size_t i = 0; i < a.truncated.size(); ++i) CHECK(same_bits(a.truncated[i], b.truncated[i]));
    }
}
