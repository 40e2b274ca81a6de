#include "btoric/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace btoric::kernels {

namespace {
inline double clean(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }
}  // namespace

namespace serial {

double max_over_grid(std::size_t nx, std::size_t ny, const GridFn& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) m = std::max(m, clean(f(i, j)));
    return m;
}

std::vector<double> map_indices(std::size_t n, const IndexFn& f) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

}  // namespace serial

namespace omp {

double max_over_grid(std::size_t nx, std::size_t ny, const GridFn& f) {
    double m = -std::numeric_limits<double>::infinity();
    const long long total = static_cast<long long>(nx * ny);
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long long k = 0; k < total; ++k) {
        double v = clean(f(static_cast<std::size_t>(k) / ny, static_cast<std::size_t>(k) % ny));
        if (v > m) m = v;
    }
    return m;
}

std::vector<double> map_indices(std::size_t n, const IndexFn& f) {
    std::vector<double> out(n);
    const long long total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < total; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    return out;
}

}  // namespace omp

double ordered_sum(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace btoric::kernels
