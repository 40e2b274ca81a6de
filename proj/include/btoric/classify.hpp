#pragma once

// Descriptor-level Delzant correspondence for b-polytopes, symplectic cuts,
// and the low-dimensional classification remarks.

#include "btoric/bpolytope.hpp"

#include <string>
#include <variant>
#include <vector>

namespace btoric {

// T^2 x X_Delta with the graph's exceptional circles and periods.
struct CycleProduct {
    WeightedGraph graph;
    SplittingChoice splitting;
    Polyhedron base;
};

// S^2-type x X_Delta, cut by the listed half-spaces in order.
struct LineCutSequence {
    WeightedGraph graph;
    SplittingChoice splitting;
    Polyhedron base;
    BPolytope interval;
    std::vector<BHalfSpace> cuts;
};

using ToricDescriptor = std::variant<CycleProduct, LineCutSequence>;

ToricDescriptor realize(const BPolytope& p);
BPolytope moment_image(const ToricDescriptor& d);

// Thrown when a cut meets the exceptional set or breaks the Delzant condition.
class CutError : public DomainError {
public:
    CutError(const std::string& what, std::vector<BVertexFailure> failures = {})
        : DomainError(what), failures(std::move(failures)) {}
    std::vector<BVertexFailure> failures;
};

BPolytope symplectic_cut(const BPolytope& p, const BHalfSpace& h);

// End-for-end relabeling of the graph, moving each copy with its vertex.
BPolytope reversed(const BPolytope& p);

struct T2xS2 {
    friend bool operator==(const T2xS2&, const T2xS2&) = default;
};
struct S2xS2 {
    friend bool operator==(const S2xS2&, const S2xS2&) = default;
};
struct ConnectSum {
    int m = 1;
    int n = 1;
    friend bool operator==(const ConnectSum&, const ConnectSum&) = default;
};
// Even number of exceptional components with blow-ups: raw counts per orientation class.
struct BlowupCounts {
    int positive = 0;
    int negative = 0;
    friend bool operator==(const BlowupCounts&, const BlowupCounts&) = default;
};

using DiffeotypeLabel = std::variant<T2xS2, S2xS2, ConnectSum, BlowupCounts>;

DiffeotypeLabel diffeotype_4d(const BPolytope& p);
std::string to_string(const DiffeotypeLabel& d);

enum class SurfaceKind { S2, T2 };

struct SurfaceInvariants {
    SurfaceKind kind = SurfaceKind::S2;
    int z_count = 1;
    std::vector<double> periods;
    double volume = 0.0;
};

// Standard model: exceptional latitude circles at evenly spaced heights
// (S^2, h in (-1, 1)) or angles (T^2, theta_1 in [0, 2 pi)).
struct SurfaceDescriptor {
    SurfaceKind kind = SurfaceKind::S2;
    std::vector<double> z_levels;
    std::vector<double> periods;
    double volume = 0.0;
};

SurfaceDescriptor classify_surface(const SurfaceInvariants& inv);
bool equivalent(const SurfaceDescriptor& a, const SurfaceDescriptor& b, double tolerance = 1e-6);
std::string to_string(SurfaceKind k);

}  // namespace btoric
