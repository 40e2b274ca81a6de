#pragma once

// Grid and index-map kernels used by the surface numerics. The serial
// versions are the reference; the omp versions must agree bit for bit.

#include <cstddef>
#include <functional>
#include <vector>

namespace btoric::kernels {

using GridFn = std::function<double(std::size_t, std::size_t)>;
using IndexFn = std::function<double(std::size_t)>;

namespace serial {
// Max of f(i, j) over [0, nx) x [0, ny); NaN counts as +inf.
double max_over_grid(std::size_t nx, std::size_t ny, const GridFn& f);
// out[i] = f(i) for i in [0, n).
std::vector<double> map_indices(std::size_t n, const IndexFn& f);
}  // namespace serial

namespace omp {
double max_over_grid(std::size_t nx, std::size_t ny, const GridFn& f);
std::vector<double> map_indices(std::size_t n, const IndexFn& f);
}  // namespace omp

// Left-to-right sum, so parallel callers reduce in a fixed order.
double ordered_sum(const std::vector<double>& values);

int max_threads();

}  // namespace btoric::kernels
