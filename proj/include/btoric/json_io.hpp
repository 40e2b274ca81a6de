#pragma once

// JSON encoding of the exact and numeric data types. Rationals travel as
// strings "p/q" (integers may also be plain JSON integers); floating-point
// numbers are refused wherever exact data is expected.

#include "btoric/classify.hpp"
#include "btoric/surface_lab.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace btoric::io {

using json = nlohmann::ordered_json;

// Malformed document: wrong shape, wrong type, unparsable value.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational rational_from_json(const json& j, const std::string& where);
json to_json(const Rational& q);

RationalVector vector_from_json(const json& j, const std::string& where, std::size_t dim);
RationalCovector covector_from_json(const json& j, const std::string& where, std::size_t dim);
json to_json(const RationalVector& v);
json to_json(const RationalCovector& v);

WeightedGraph graph_from_json(const json& j);
json to_json(const WeightedGraph& g);
json to_json(const std::vector<GraphViolation>& v);

Polyhedron polyhedron_from_json(const json& j);
json to_json(const Polyhedron& p);
// Pruned constraints plus vertices (or null for empty input).
json describe(const Polyhedron& p);

BHalfSpace halfspace_from_json(const json& j, std::size_t dim);
json to_json(const BHalfSpace& h);

// {"graph": ..., "splitting": [...]?, "halfspaces": [...]}.
struct BPolytopeInput {
    WeightedGraph graph;
    SplittingChoice splitting;
    std::vector<BHalfSpace> halfspaces;
};

BPolytopeInput bpolytope_input_from_json(const json& j);
json to_json(const BPolytope& p);
json to_json(const BPolytopeDiagnostics& d);
json to_json(const BDelzantReport& r);
json to_json(const DelzantReport& r);

json to_json(const ToricDescriptor& d);
json to_json(const DiffeotypeLabel& d);

SurfaceInvariants surface_invariants_from_json(const json& j);
json to_json(const SurfaceInvariants& s);
json to_json(const SurfaceDescriptor& s);

surface::BSurfaceModel surface_model_from_json(const json& j);
json to_json(const surface::BSurfaceModel& m);

struct MomentInput {
    surface::ProductModel model;
    std::vector<surface::MomentComponent> moment;
    std::size_t density = 100;
    double collar = 1e-3;
};

MomentInput moment_input_from_json(const json& j);

}  // namespace btoric::io
