#pragma once

// SVG pictures of b-moment codomains and b-polytopes in dimension n <= 2.
// Copies of t* are squeezed between the exceptional lines by the chart
// compression s = exp(<x, X> / <w(e), X>); the exact data rides along in
// an XML comment.

#include "btoric/bpolytope.hpp"

#include <string>

namespace btoric {

std::string render_svg(const WeightedGraph& g, const SplittingChoice& x);
std::string render_svg(const BPolytope& p);

}  // namespace btoric
