#pragma once

// Rational convex polyhedra in H-representation.

#include "btoric/lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace btoric {

class EmptyPolyhedronError : public DomainError {
public:
    using DomainError::DomainError;
};

// <normal, x> <= bound. A zero normal is only used for the trivial
// constraint 0 <= bound, which encodes emptiness when bound < 0.
struct HalfPlane {
    RationalCovector normal;
    Rational bound;

    friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
    friend bool operator<(const HalfPlane& a, const HalfPlane& b) {
        if (a.normal == b.normal) return a.bound < b.bound;
        return a.normal < b.normal;
    }
};

// Scales the normal to its primitive integer representative.
HalfPlane normalized(const HalfPlane& h);
bool satisfies(const HalfPlane& h, const RationalVector& x);
bool is_tight(const HalfPlane& h, const RationalVector& x);

class Polyhedron {
public:
    Polyhedron() = default;
    Polyhedron(std::size_t dim, std::vector<HalfPlane> constraints);

    // The whole space.
    static Polyhedron universe(std::size_t dim) { return Polyhedron(dim, {}); }
    static Polyhedron empty(std::size_t dim);
    // Axis-parallel box [lo_i, hi_i].
    static Polyhedron box(const std::vector<std::pair<Rational, Rational>>& bounds);

    std::size_t dim() const { return dim_; }
    const std::vector<HalfPlane>& constraints() const { return constraints_; }

    friend bool operator==(const Polyhedron&, const Polyhedron&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<HalfPlane> constraints_;
};

// Conic hull of the generators; {0} is the empty list. Lines of the lineality
// space appear as a pair of opposite generators.
struct Cone {
    std::vector<RationalVector> generators;

    bool trivial() const { return generators.empty(); }
    friend bool operator==(const Cone&, const Cone&) = default;
};

bool is_empty(const Polyhedron& p);
bool contains(const Polyhedron& p, const RationalVector& x);
bool is_bounded(const Polyhedron& p);

// Basis of the lineality space {v : <a, v> = 0 for every constraint}.
std::vector<RationalVector> lineality_space(const Polyhedron& p);

// Deduplicated, lexicographically sorted vertex list. Polyhedra containing a
// line have no vertices. Throws EmptyPolyhedronError on empty input.
std::vector<RationalVector> vertices(const Polyhedron& p);

Cone recession_cone(const Polyhedron& p);

// True iff <normal, x> <= bound holds on all of p. Empty p implies everything.
bool implies(const Polyhedron& p, const HalfPlane& h);

// Normalized, deduplicated, irredundant constraints in sorted order. Empty
// input is returned unchanged.
Polyhedron prune_redundant(const Polyhedron& p);

Polyhedron intersect_halfplane(const Polyhedron& p, const HalfPlane& h);
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

// Image under the quotient t* -> t* / R direction, by exact Fourier-Motzkin
// elimination, in the coordinates of LineQuotient(direction).
Polyhedron project_out(const Polyhedron& p, const RationalVector& direction);

// Sorted vertex sets for bounded polyhedra, mutual containment otherwise.
bool same_polyhedron(const Polyhedron& p, const Polyhedron& q);

// Dimension of the affine hull; -1 for the empty set.
int affine_dimension(const Polyhedron& p);

Polyhedron translate(const Polyhedron& p, const RationalVector& t);
// Image under x -> U x + t for an invertible U.
Polyhedron affine_image(const Polyhedron& p, const RationalMatrix& u, const RationalVector& t);

struct VertexDiagnostic {
    RationalVector vertex;
    std::string reason;
};

struct DelzantReport {
    bool delzant = true;
    std::vector<VertexDiagnostic> failures;
};

// Local Delzant test at one vertex of an irredundant polyhedron: simple, and the
// primitive edge directions form a lattice basis. Returns the failure reason.
std::optional<std::string> vertex_cone_failure(const Polyhedron& irredundant, const RationalVector& vertex);

// Primitive directions of the edges leaving a simple vertex, one per tight facet.
std::vector<RationalVector> edge_directions(const Polyhedron& irredundant, const RationalVector& vertex);

// Classic Delzant condition. Requires a bounded, non-empty, full-dimensional polytope.
DelzantReport is_delzant(const Polyhedron& p);

}  // namespace btoric
