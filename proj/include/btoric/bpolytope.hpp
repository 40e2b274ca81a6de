#pragma once

// b-polytopes: finite intersections of A- and B-type half-spaces in the
// b-moment codomain, with one polyhedron per vertex copy of t*.

#include "btoric/codomain.hpp"
#include "btoric/polytope.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace btoric {

enum class Side { Le, Ge };
enum class BKind { A, B };

// A: <xi, normal> (side) bound in the copy of a leaf vertex only.
// B: same inequality in every copy; the normal lies in t_w.
struct BHalfSpace {
    BKind kind = BKind::B;
    std::size_t vertex = 0;
    RationalCovector normal;
    Rational bound;
    Side side = Side::Le;

    // Equivalent <a, xi> <= b form.
    HalfPlane as_halfplane() const;

    friend bool operator==(const BHalfSpace&, const BHalfSpace&) = default;
};

BHalfSpace type_a(std::size_t vertex, RationalCovector normal, Rational bound, Side side = Side::Le);
BHalfSpace type_b(RationalCovector normal, Rational bound, Side side = Side::Le);

struct BViolation {
    std::string code;
    std::string message;
    std::optional<std::size_t> vertex;
    std::optional<std::size_t> edge;
    std::optional<std::size_t> halfspace;
};

struct BPolytopeDiagnostics {
    std::vector<BViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

class BPolytope {
public:
    const WeightedGraph& graph() const { return graph_; }
    const SplittingChoice& splitting() const { return splitting_; }
    const std::vector<BHalfSpace>& halfspaces() const { return halfspaces_; }
    // Pruned polyhedron P_v in the copy of t* at vertex v.
    const Polyhedron& copy(std::size_t v) const { return copies_.at(v); }
    const std::vector<Polyhedron>& copies() const { return copies_; }
    // Delta_Z in the coordinates of tw_quotient(graph()).
    const Polyhedron& extremal() const { return extremal_; }
    const LineQuotient& quotient() const { return quotient_; }

    // Same graph, splitting and half-space list.
    friend bool operator==(const BPolytope& a, const BPolytope& b) {
        return a.graph_ == b.graph_ && a.splitting_ == b.splitting_ && a.halfspaces_ == b.halfspaces_;
    }

private:
    friend struct BuildAccess;
    friend struct BPolytopeTestAccess;

    BPolytope(WeightedGraph g, SplittingChoice x, std::vector<BHalfSpace> hs, std::vector<Polyhedron> copies,
              Polyhedron extremal);

    WeightedGraph graph_;
    SplittingChoice splitting_;
    std::vector<BHalfSpace> halfspaces_;
    std::vector<Polyhedron> copies_;
    Polyhedron extremal_;
    LineQuotient quotient_;
};

// Negative-control hook: overwrite a cached copy without revalidation.
struct BPolytopeTestAccess {
    static void replace_copy(BPolytope& p, std::size_t v, Polyhedron q) { p.copies_.at(v) = std::move(q); }
};

struct BuildResult {
    std::optional<BPolytope> polytope;
    BPolytopeDiagnostics diagnostics;
};

BuildResult build(const WeightedGraph& g, const SplittingChoice& x, const std::vector<BHalfSpace>& hs);
// Throws DomainError carrying the diagnostics summary.
BPolytope build_or_throw(const WeightedGraph& g, const SplittingChoice& x, const std::vector<BHalfSpace>& hs);

Polyhedron extremal_polytope(const BPolytope& p);

// Stabilized slice of copy v toward its end at edge e, projected to t_w*.
Polyhedron z_slice(const BPolytope& p, std::size_t v, std::size_t e);
Polyhedron z_slice(const BPolytope& p, std::size_t e);

struct BVertexFailure {
    // Vertex copy, or nullopt for a vertex of Delta_Z.
    std::optional<std::size_t> copy;
    RationalVector vertex;
    std::string reason;
};

struct BDelzantReport {
    bool delzant = true;
    std::vector<BVertexFailure> failures;
};

BDelzantReport is_delzant_b(const BPolytope& p);

struct LocalProductResult {
    bool ok = false;
    // Exact witness epsilon = 2^-m.
    Rational epsilon;
    // Neither adjacent copy has a vertex, so the product extends over the whole chart.
    bool whole_chart = false;
    std::string detail;
};

LocalProductResult local_product_check(const BPolytope& p, std::size_t e);

// One-dimensional b-polytope over an interior point of Delta_Z.
BPolytope fiber_over(const BPolytope& p, const RationalVector& xbar);

// Every copy translated by t.
BPolytope translate(const BPolytope& p, const RationalVector& t);

BPolytope canonical_form(const BPolytope& p);

// Half-spaces in <= form; A-type sorted by (vertex, normal, bound), then B-type.
std::vector<BHalfSpace> normalized_halfspaces(const std::vector<BHalfSpace>& hs);

}  // namespace btoric
