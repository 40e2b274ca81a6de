#pragma once

// Seeded random instances: rationals, unimodular maps, Delzant and generic
// polytopes, valid graphs and Delzant b-polytopes.

#include "btoric/classify.hpp"

#include <random>

namespace gen {

using namespace btoric;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Rational rational(Rng& rng, int lo, int hi, int max_den) {
    Rational q(uniform(rng, lo, hi), uniform(rng, 1, max_den));
    q.canonicalize();
    return q;
}

inline RationalVector vec(std::initializer_list<long> l) {
    RationalVector v;
    for (long x : l) v.coords.emplace_back(x);
    return v;
}

inline RationalCovector covec(std::initializer_list<long> l) {
    RationalCovector v;
    for (long x : l) v.coords.emplace_back(x);
    return v;
}

inline RationalVector random_vector(Rng& rng, std::size_t n, int lo, int hi, int max_den = 1) {
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rational(rng, lo, hi, max_den);
    return v;
}

inline RationalCovector random_covector(Rng& rng, std::size_t n, int lo, int hi, int max_den = 1) {
    return transpose(random_vector(rng, n, lo, hi, max_den));
}

inline RationalVector nonzero_vector(Rng& rng, std::size_t n, int lo, int hi, int max_den = 1) {
    for (;;) {
        auto v = random_vector(rng, n, lo, hi, max_den);
        if (!v.is_zero()) return v;
    }
}

inline RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

// Product of random elementary integer row operations, swaps and sign flips.
inline RationalMatrix unimodular(Rng& rng, std::size_t n, int steps = 4) {
    RationalMatrix m = identity(n);
    for (int s = 0; s < steps; ++s) {
        int op = uniform(rng, 0, 2);
        std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        if (op == 0 && i != j) {
            int k = uniform(rng, -2, 2);
            for (std::size_t c = 0; c < n; ++c) m(i, c) += k * m(j, c);
        } else if (op == 1 && i != j) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(i, c), m(j, c));
        } else {
            for (std::size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
        }
    }
    return m;
}

inline HalfPlane hp(RationalCovector a, Rational b) { return HalfPlane{std::move(a), std::move(b)}; }

inline Polyhedron delzant_shape(Rng& rng, std::size_t d) {
    auto size = [&] { return Rational(uniform(rng, 1, 3)); };
    std::vector<HalfPlane> cs;
    auto e = [&](std::size_t i, long s) {
        RationalCovector a(d);
        a[i] = s;
        return a;
    };
    if (d == 1) {
        Rational lo = rational(rng, -4, 4, 3);
        return Polyhedron(1, {hp(e(0, 1), lo + rational(rng, 1, 4, 2)), hp(e(0, -1), -lo)});
    }
    int kind = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < d; ++i) cs.push_back(hp(e(i, -1), 0));
    if (kind == 0) {
        for (std::size_t i = 0; i < d; ++i) cs.push_back(hp(e(i, 1), size()));
    } else if (kind == 1) {
        RationalCovector all(d);
        for (std::size_t i = 0; i < d; ++i) all[i] = 1;
        cs.push_back(hp(all, size()));
    } else if (kind == 2) {
        // Hirzebruch trapezoid, times an interval in dimension 3.
        Rational q = size();
        long k = uniform(rng, 0, 3);
        RationalCovector slant(d);
        slant[0] = 1;
        slant[1] = k;
        cs.push_back(hp(e(1, 1), q));
        cs.push_back(hp(slant, k * q + size()));
        if (d == 3) cs.push_back(hp(e(2, 1), size()));
    } else {
        // Box with one corner blown up.
        for (std::size_t i = 0; i < d; ++i) cs.push_back(hp(e(i, 1), Rational(uniform(rng, 2, 3))));
        RationalCovector all(d);
        for (std::size_t i = 0; i < d; ++i) all[i] = -1;
        cs.push_back(hp(all, -1));
    }
    Rational scale(uniform(rng, 1, 3), uniform(rng, 1, 2));
    scale.canonicalize();
    for (auto& c : cs) c.bound *= scale;
    return Polyhedron(d, cs);
}

inline Polyhedron random_delzant(Rng& rng, std::size_t d) {
    Polyhedron p = delzant_shape(rng, d);
    return affine_image(p, unimodular(rng, d), random_vector(rng, d, -3, 3, 2));
}

inline RationalVector centroid(const std::vector<RationalVector>& vs) {
    RationalVector c(vs.front().size());
    for (const auto& v : vs) c += v;
    return Rational(1, static_cast<long>(vs.size())) * c;
}

// Bounded, full-dimensional, at most max_facets constraints: a Delzant shape
// or a box, then random cuts through a neighbourhood of an interior point.
inline Polyhedron random_polytope(Rng& rng, std::size_t d, std::size_t max_facets = 10) {
    Polyhedron p;
    if (coin(rng)) {
        p = random_delzant(rng, d);
    } else {
        std::vector<std::pair<Rational, Rational>> box;
        for (std::size_t i = 0; i < d; ++i) box.emplace_back(-uniform(rng, 1, 3), uniform(rng, 1, 3));
        p = Polyhedron::box(box);
    }
    auto cs = p.constraints();
    const RationalVector c = centroid(vertices(p));
    const int extra = uniform(rng, 0, static_cast<int>(max_facets - std::min(max_facets, cs.size())));
    for (int k = 0; k < extra; ++k) {
        if (coin(rng, 0.4)) {
            // Corner chop at a random vertex.
            Polyhedron cur = prune_redundant(Polyhedron(d, cs));
            auto vs = vertices(cur);
            const auto& v = vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vs.size()) - 1))];
            RationalCovector a(d);
            for (const auto& h : cur.constraints())
                if (is_tight(h, v)) a += h.normal;
            if (a.is_zero()) continue;
            a = primitive_part(a);
            Rational b = pair(v, a) - Rational(1, uniform(rng, 2, 4));
            if (pair(c, a) < b) cs.push_back(hp(a, b));
            continue;
        }
        RationalCovector a = transpose(nonzero_vector(rng, d, -2, 2));
        cs.push_back(hp(a, pair(c, a) + rational(rng, 1, 4, 3)));
    }
    return Polyhedron(d, cs);
}

inline RationalVector random_u(Rng& rng, std::size_t n) {
    if (n == 1) return vec({coin(rng) ? 1 : -1});
    if (n <= 3 && coin(rng, 0.35)) {
        static const std::vector<std::vector<long>> two{{2, 3}, {3, -2}, {-2, 5}, {5, 3}};
        static const std::vector<std::vector<long>> three{{2, 3, 5}, {3, -2, 0}, {2, 0, 3}, {-4, 3, 6}};
        const auto& pool = n == 2 ? two : three;
        const auto& pick = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
        RationalVector u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = pick[i];
        return u;
    }
    return primitive_part(nonzero_vector(rng, n, -2, 2));
}

inline WeightedGraph random_graph(Rng& rng, GraphShape shape, std::size_t edges, std::size_t n) {
    WeightedGraph g;
    g.shape = shape;
    g.n = n;
    g.u = random_u(rng, n);
    int sign = coin(rng) ? 1 : -1;
    for (std::size_t e = 0; e < edges; ++e, sign = -sign) g.edges.push_back({sign, rational(rng, 1, 4, 3)});
    return g;
}

// Any integer X with <u, X> = 1: the default section plus a random t_w part.
inline SplittingChoice random_splitting(Rng& rng, const WeightedGraph& g) {
    SplittingChoice x = default_splitting(g);
    LineQuotient q(g.u);
    for (const auto& y : q.kernel_basis()) x.X += Rational(uniform(rng, -2, 2)) * y;
    return x;
}

inline std::vector<BHalfSpace> lifted_base(const WeightedGraph& g, const Polyhedron& base) {
    LineQuotient q(g.u);
    std::vector<BHalfSpace> hs;
    for (const auto& c : base.constraints()) hs.push_back(type_b(q.lift_covector(c.normal), c.bound));
    return hs;
}

// Tries a blow-up corner cut at a random vertex of a random leaf copy.
inline std::optional<BPolytope> random_corner_cut(Rng& rng, const BPolytope& p) {
    const auto leaves = p.graph().leaves();
    if (leaves.empty()) return std::nullopt;
    std::size_t v = leaves[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(leaves.size()) - 1))];
    const Polyhedron& c = p.copy(v);
    auto vs = vertices(c);
    if (vs.empty()) return std::nullopt;
    const auto& x = vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vs.size()) - 1))];
    RationalCovector a(c.dim());
    for (const auto& h : c.constraints())
        if (is_tight(h, x)) a += h.normal;
    if (a.is_zero()) return std::nullopt;
    a = primitive_part(a);
    try {
        return symplectic_cut(p, type_a(v, a, pair(x, a) - Rational(1, uniform(rng, 2, 5))));
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

inline BPolytope random_delzant_bpolytope(Rng& rng, GraphShape shape, std::size_t edges, std::size_t n, int max_cuts = 2) {
    for (;;) {
        WeightedGraph g = random_graph(rng, shape, edges, n);
        SplittingChoice x = random_splitting(rng, g);
        std::vector<BHalfSpace> hs;
        if (n >= 2) hs = lifted_base(g, random_delzant(rng, n - 1));
        if (shape == GraphShape::Line) {
            for (std::size_t v : g.leaves()) {
                std::size_t e = v == 0 ? 0 : edges - 1;
                hs.push_back(type_a(v, Rational(g.edges[e].sign) * x.X, rational(rng, -4, 4, 2)));
            }
        }
        auto built = build(g, x, hs);
        if (!built.polytope || !is_delzant_b(*built.polytope).delzant) continue;
        BPolytope p = *built.polytope;
        if (shape == GraphShape::Line && n >= 2) {
            int cuts = uniform(rng, 0, max_cuts);
            for (int k = 0; k < cuts; ++k)
                if (auto q = random_corner_cut(rng, p)) p = *q;
        }
        return p;
    }
}

}  // namespace gen
