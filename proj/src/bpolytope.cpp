#include "btoric/bpolytope.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace btoric {

namespace {

std::string edge_name(std::size_t e) { return "e" + std::to_string(e); }
std::string vertex_name(std::size_t v) { return "v" + std::to_string(v); }

// Edge adjacent to a leaf of a line graph.
std::size_t leaf_edge(const WeightedGraph& g, std::size_t v) { return v == 0 ? 0 : g.edges.size() - 1; }

Polyhedron with_constraints(const Polyhedron& p, const std::vector<HalfPlane>& extra) {
    auto cs = p.constraints();
    cs.insert(cs.end(), extra.begin(), extra.end());
    return Polyhedron(p.dim(), std::move(cs));
}

// Slice of a copy at sigma_e <xi, X> = level, projected along u.
Polyhedron slice_at(const Polyhedron& copy, const WeightedGraph& g, const RationalCovector& x, std::size_t e,
                    const Rational& level) {
    RationalCovector n = Rational(g.edges[e].sign) * x;
    Polyhedron s = with_constraints(copy, {HalfPlane{n, level}, HalfPlane{-n, -level}});
    return project_out(s, g.u);
}

Polyhedron stabilized_slice(const Polyhedron& copy, const WeightedGraph& g, const RationalCovector& x, std::size_t e) {
    RationalCovector n = Rational(g.edges[e].sign) * x;
    Rational level = 0;
    auto vs = vertices(copy);
    if (!vs.empty()) {
        level = pair(vs.front(), n);
        for (const auto& v : vs) level = std::min(level, pair(v, n));
        level -= 1;
    }
    return slice_at(copy, g, x, e, level);
}

Cone line_cone(const RationalVector& u) {
    Cone c{{primitive_part(u), primitive_part(-u)}};
    std::sort(c.generators.begin(), c.generators.end());
    return c;
}

}  // namespace

HalfPlane BHalfSpace::as_halfplane() const {
    if (side == Side::Le) return HalfPlane{normal, bound};
    return HalfPlane{-normal, -bound};
}

BHalfSpace type_a(std::size_t vertex, RationalCovector normal, Rational bound, Side side) {
    return BHalfSpace{BKind::A, vertex, std::move(normal), std::move(bound), side};
}

BHalfSpace type_b(RationalCovector normal, Rational bound, Side side) {
    return BHalfSpace{BKind::B, 0, std::move(normal), std::move(bound), side};
}

std::string BPolytopeDiagnostics::summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].message;
    }
    return os.str();
}

BPolytope::BPolytope(WeightedGraph g, SplittingChoice x, std::vector<BHalfSpace> hs, std::vector<Polyhedron> copies,
                     Polyhedron extremal)
    : graph_(std::move(g)),
      splitting_(std::move(x)),
      halfspaces_(std::move(hs)),
      copies_(std::move(copies)),
      extremal_(std::move(extremal)),
      quotient_(graph_.u) {}

struct BuildAccess {
    static BPolytope make(WeightedGraph g, SplittingChoice x, std::vector<BHalfSpace> hs, std::vector<Polyhedron> c,
                          Polyhedron ex) {
        return BPolytope(std::move(g), std::move(x), std::move(hs), std::move(c), std::move(ex));
    }
};

BuildResult build(const WeightedGraph& g, const SplittingChoice& x, const std::vector<BHalfSpace>& hs) {
    BuildResult result;
    auto& out = result.diagnostics.violations;

    for (const auto& v : validate_graph(g)) out.push_back({"graph_" + v.code, v.message, v.vertex, v.edge, {}});
    if (!out.empty()) return result;
    for (const auto& m : validate_splitting(g, x)) out.push_back({"splitting", m, {}, {}, {}});
    if (!out.empty()) return result;

    const std::size_t n = g.n;
    const LineQuotient quotient(g.u);
    std::vector<HalfPlane> b_planes;
    std::vector<std::vector<HalfPlane>> a_planes(g.vertex_count());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto& h = hs[i];
        const std::string tag = "half-space " + std::to_string(i);
        if (h.normal.size() != n) {
            out.push_back({"dimension", tag + " has wrong dimension", {}, {}, i});
            continue;
        }
        if (h.normal.is_zero()) {
            out.push_back({"zero_normal", tag + " has zero normal", {}, {}, i});
            continue;
        }
        HalfPlane hp = h.as_halfplane();
        if (h.kind == BKind::B) {
            if (sgn(pair(g.u, h.normal)) != 0)
                out.push_back({"typeB_not_in_tw", tag + ": B-type normal does not annihilate u", {}, {}, i});
            else
                b_planes.push_back(hp);
            continue;
        }
        if (h.vertex >= g.vertex_count() || !g.is_leaf(h.vertex)) {
            out.push_back({"typeA_not_leaf", tag + ": A-type half-space must sit at a leaf of a line graph", h.vertex,
                           {}, i});
            continue;
        }
        const std::size_t e = leaf_edge(g, h.vertex);
        const int s = sgn(pair(modular_weight(g, e), hp.normal));
        if (s == 0)
            out.push_back({"typeA_in_tw", tag + ": A-type normal lies in t_w, its boundary meets exceptional component " +
                                              edge_name(e),
                           h.vertex, e, i});
        else if (s < 0)
            out.push_back({"misses_exceptional_component",
                           tag + " cuts off the end of " + vertex_name(h.vertex) + ": does not meet exceptional component " +
                               edge_name(e),
                           h.vertex, e, i});
        else
            a_planes[h.vertex].push_back(hp);
    }
    if (!out.empty()) return result;

    std::vector<HalfPlane> delta_planes;
    for (const auto& b : b_planes) delta_planes.push_back(HalfPlane{quotient.restrict_covector(b.normal), b.bound});
    Polyhedron delta(n - 1, delta_planes);
    if (is_empty(delta)) {
        out.push_back({"extremal_slice_empty", "extremal slice empty", {}, {}, {}});
        return result;
    }
    if (!is_bounded(delta)) {
        out.push_back({"unbounded", "unbounded in a non-exceptional direction (extremal slice is unbounded)", {}, {}, {}});
        return result;
    }
    delta = prune_redundant(delta);

    std::vector<Polyhedron> copies;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::vector<HalfPlane> cs = b_planes;
        cs.insert(cs.end(), a_planes[v].begin(), a_planes[v].end());
        Polyhedron pv(n, std::move(cs));
        if (is_empty(pv)) {
            for (auto e : g.incident_edges(v))
                out.push_back({"misses_exceptional_component",
                               "copy " + vertex_name(v) + " is empty: does not meet exceptional component " + edge_name(e),
                               v, e, {}});
            copies.push_back(pv);
            continue;
        }
        pv = prune_redundant(pv);
        Cone rc = recession_cone(pv);
        if (g.is_leaf(v)) {
            const std::size_t e = leaf_edge(g, v);
            Cone expected{{primitive_part(-modular_weight(g, e))}};
            if (rc.trivial())
                out.push_back({"misses_exceptional_component",
                               "copy " + vertex_name(v) + " is bounded: does not meet exceptional component " + edge_name(e),
                               v, e, {}});
            else if (!(rc == expected))
                out.push_back({"unbounded",
                               "unbounded in a non-exceptional direction: recession cone of leaf copy " + vertex_name(v) +
                                   " is not the ray of -w(" + edge_name(e) + ")",
                               v, e, {}});
        } else {
            if (!(rc == line_cone(g.u)) || !vertices(pv).empty())
                out.push_back({"interior_not_product", "copy " + vertex_name(v) + " is not Delta_Z x R", v, {}, {}});
        }
        copies.push_back(std::move(pv));
    }
    if (!out.empty()) return result;

    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.endpoints(e);
        for (std::size_t v : {a, b}) {
            Polyhedron s = stabilized_slice(copies[v], g, x.X, e);
            if (is_empty(s))
                out.push_back({"misses_exceptional_component",
                               "copy " + vertex_name(v) + " does not meet exceptional component " + edge_name(e), v, e, {}});
            else if (!same_polyhedron(s, delta))
                out.push_back({"z_slices_differ",
                               "slice of copy " + vertex_name(v) + " at exceptional component " + edge_name(e) +
                                   " differs from the extremal polytope",
                               v, e, {}});
        }
    }
    if (!out.empty()) return result;

    result.polytope = BuildAccess::make(g, x, hs, std::move(copies), std::move(delta));
    return result;
}

BPolytope build_or_throw(const WeightedGraph& g, const SplittingChoice& x, const std::vector<BHalfSpace>& hs) {
    auto r = build(g, x, hs);
    if (!r.polytope) throw DomainError("not a b-polytope: " + r.diagnostics.summary());
    return std::move(*r.polytope);
}

Polyhedron extremal_polytope(const BPolytope& p) {
    const auto& g = p.graph();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!same_polyhedron(z_slice(p, e), p.extremal()))
            throw DomainError("extremal_polytope: slice at " + edge_name(e) + " differs");
    }
    return p.extremal();
}

Polyhedron z_slice(const BPolytope& p, std::size_t v, std::size_t e) {
    auto [a, b] = p.graph().endpoints(e);
    if (v != a && v != b) throw DomainError("z_slice: vertex is not an endpoint of the edge");
    return prune_redundant(stabilized_slice(p.copy(v), p.graph(), p.splitting().X, e));
}

Polyhedron z_slice(const BPolytope& p, std::size_t e) { return z_slice(p, p.graph().endpoints(e).first, e); }

BDelzantReport is_delzant_b(const BPolytope& p) {
    BDelzantReport report;
    const auto& g = p.graph();
    if (g.shape == GraphShape::Line) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const auto& pv = p.copy(v);
            for (const auto& x : vertices(pv)) {
                if (auto why = vertex_cone_failure(pv, x)) {
                    report.delzant = false;
                    report.failures.push_back({v, x, *why});
                }
            }
        }
        return report;
    }
    const auto& delta = p.extremal();
    if (delta.dim() == 0) return report;
    if (affine_dimension(delta) != static_cast<int>(delta.dim())) {
        report.delzant = false;
        report.failures.push_back({std::nullopt, RationalVector(delta.dim()), "extremal polytope is not full-dimensional"});
        return report;
    }
    auto classic = is_delzant(delta);
    report.delzant = classic.delzant;
    for (auto& f : classic.failures) report.failures.push_back({std::nullopt, f.vertex, f.reason});
    return report;
}

LocalProductResult local_product_check(const BPolytope& p, std::size_t e) {
    const auto& g = p.graph();
    const auto [a, b] = g.endpoints(e);
    const RationalCovector& x = p.splitting().X;
    const Rational wx = pair(modular_weight(g, e), x);
    // ln 2 > ln2_lo, so -m ln2_lo lies above log(2^-m).
    const Rational ln2_lo(69314, 100000);

    LocalProductResult out;
    std::optional<Rational> qmin;
    for (std::size_t v : {a, b}) {
        for (const auto& xi : vertices(p.copy(v))) {
            Rational q = pair(xi, x) / wx;
            if (!qmin || q < *qmin) qmin = q;
        }
    }
    BigInt m = 0;
    if (!qmin)
        out.whole_chart = true;
    else if (sgn(*qmin) < 0)
        m = ceil_of(-*qmin / ln2_lo);
    const Rational level_q = -Rational(m) * ln2_lo;
    // sigma <xi, X> = level_q * c_e since <w(e), X> = sigma c_e.
    const Rational level = level_q * abs(wx);
    for (std::size_t v : {a, b}) {
        Polyhedron s = slice_at(p.copy(v), g, x, e, level);
        if (!same_polyhedron(s, p.extremal())) {
            out.ok = false;
            out.detail = "chart slice of copy " + vertex_name(v) + " at s = 2^-" + m.get_str() +
                         " is not the extremal polytope";
            return out;
        }
    }
    BigInt den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), m.get_ui());
    out.ok = true;
    out.epsilon = Rational(BigInt(1), den);
    out.detail = out.whole_chart ? "no vertices in the adjacent copies" : "product below the lowest vertex";
    return out;
}

BPolytope translate(const BPolytope& p, const RationalVector& t) {
    if (t.size() != p.graph().n) throw DomainError("translate: dimension mismatch");
    std::vector<BHalfSpace> hs;
    for (const auto& h : p.halfspaces()) {
        HalfPlane hp = h.as_halfplane();
        BHalfSpace moved = h;
        moved.normal = hp.normal;
        moved.bound = hp.bound + pair(t, hp.normal);
        moved.side = Side::Le;
        hs.push_back(std::move(moved));
    }
    return build_or_throw(p.graph(), p.splitting(), hs);
}

BPolytope fiber_over(const BPolytope& p, const RationalVector& xbar) {
    const auto& g = p.graph();
    const auto& q = p.quotient();
    if (xbar.size() + 1 != g.n) throw DomainError("fiber_over: point has wrong dimension");
    for (const auto& h : p.extremal().constraints())
        if (pair(xbar, h.normal) >= h.bound)
            throw DomainError("fiber_over: point " + to_string(xbar) + " is not in the interior of the extremal polytope");

    const RationalCovector& x = p.splitting().X;
    const RationalVector lifted = q.lift(xbar);
    const Rational lx = pair(lifted, x);

    WeightedGraph fiber = g;
    fiber.n = 1;
    fiber.u = RationalVector{Rational(1)};
    SplittingChoice fx{RationalCovector{Rational(1)}};

    // xi = L + (t - <L, X>) u along the fiber.
    std::vector<BHalfSpace> hs;
    for (const auto& h : p.halfspaces()) {
        if (h.kind != BKind::A) continue;
        HalfPlane hp = h.as_halfplane();
        Rational ua = pair(g.u, hp.normal);
        Rational bound = hp.bound - pair(lifted, hp.normal) + lx * ua;
        hs.push_back(type_a(h.vertex, RationalCovector{ua}, bound));
    }
    return build_or_throw(fiber, fx, normalized_halfspaces(hs));
}

std::vector<BHalfSpace> normalized_halfspaces(const std::vector<BHalfSpace>& hs) {
    std::vector<BHalfSpace> a, b;
    for (const auto& h : hs) {
        HalfPlane hp = normalized(h.as_halfplane());
        BHalfSpace out = h;
        out.normal = hp.normal;
        out.bound = hp.bound;
        out.side = Side::Le;
        if (out.kind == BKind::B) out.vertex = 0;
        (out.kind == BKind::A ? a : b).push_back(std::move(out));
    }
    std::sort(a.begin(), a.end(), [](const BHalfSpace& l, const BHalfSpace& r) {
        if (l.vertex != r.vertex) return l.vertex < r.vertex;
        if (!(l.normal == r.normal)) return l.normal < r.normal;
        return l.bound < r.bound;
    });
    std::sort(b.begin(), b.end(), [](const BHalfSpace& l, const BHalfSpace& r) {
        if (!(l.normal == r.normal)) return l.normal < r.normal;
        return l.bound < r.bound;
    });
    a.erase(std::unique(a.begin(), a.end()), a.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

BPolytope canonical_form(const BPolytope& p) {
    const auto& g = p.graph();
    const auto& q = p.quotient();
    const SplittingChoice x0 = default_splitting(g);

    auto dv = vertices(p.extremal());
    RationalVector tau = -q.lift(dv.front());
    if (g.shape == GraphShape::Line) {
        const RationalCovector n0 = Rational(g.edges[0].sign) * x0.X;
        std::optional<Rational> m0;
        for (const auto& v : vertices(p.copy(0))) {
            Rational level = pair(v + tau, n0);
            if (!m0 || level > *m0) m0 = level;
        }
        tau += (-Rational(g.edges[0].sign) * *m0) * q.direction();
    }
    BPolytope moved = translate(p, tau);

    std::vector<BHalfSpace> hs;
    for (std::size_t v : g.leaves())
        for (const auto& c : moved.copy(v).constraints())
            if (sgn(pair(q.direction(), c.normal)) != 0) hs.push_back(type_a(v, c.normal, c.bound));
    for (const auto& c : moved.extremal().constraints()) hs.push_back(type_b(q.lift_covector(c.normal), c.bound));
    return build_or_throw(g, x0, normalized_halfspaces(hs));
}

}  // namespace btoric
