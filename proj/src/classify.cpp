#include "btoric/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace btoric {

namespace {

std::size_t leaf_edge(const WeightedGraph& g, std::size_t v) { return v == 0 ? 0 : g.edges.size() - 1; }

std::vector<BHalfSpace> base_halfspaces(const LineQuotient& q, const Polyhedron& base) {
    std::vector<BHalfSpace> hs;
    for (const auto& c : base.constraints()) {
        if (c.normal.is_zero()) continue;
        hs.push_back(type_b(q.lift_covector(c.normal), c.bound));
    }
    return hs;
}

BPolytope product_polytope(const WeightedGraph& g, const SplittingChoice& x, const Polyhedron& base,
                           const BPolytope& interval) {
    const LineQuotient q(g.u);
    std::vector<BHalfSpace> hs;
    for (const auto& h : interval.halfspaces()) {
        if (h.kind != BKind::A) continue;
        HalfPlane hp = h.as_halfplane();
        hs.push_back(type_a(h.vertex, hp.normal[0] * x.X, hp.bound));
    }
    auto b = base_halfspaces(q, base);
    hs.insert(hs.end(), b.begin(), b.end());
    return build_or_throw(g, x, normalized_halfspaces(hs));
}

// Cut that keeps the polytope a Delzant b-polytope, or nullopt.
std::optional<BPolytope> try_cut(const BPolytope& p, const BHalfSpace& h) {
    try {
        return symplectic_cut(p, h);
    } catch (const CutError&) {
        return std::nullopt;
    }
}

bool less_cut(const BHalfSpace& l, const BHalfSpace& r) {
    if (l.vertex != r.vertex) return l.vertex < r.vertex;
    if (!(l.normal == r.normal)) return l.normal < r.normal;
    return l.bound < r.bound;
}

}  // namespace

ToricDescriptor realize(const BPolytope& p) {
    auto rep = is_delzant_b(p);
    if (!rep.delzant) throw DomainError("realize: b-polytope is not Delzant");
    const auto& g = p.graph();
    if (g.shape == GraphShape::Cycle) return CycleProduct{g, p.splitting(), p.extremal()};

    const RationalCovector& x = p.splitting().X;
    WeightedGraph g1 = g;
    g1.n = 1;
    g1.u = RationalVector{Rational(1)};
    std::vector<BHalfSpace> ihs;
    for (std::size_t v : g.leaves()) {
        const Rational sigma = g.edges[leaf_edge(g, v)].sign;
        std::optional<Rational> top;
        for (const auto& xi : vertices(p.copy(v))) {
            Rational level = sigma * pair(xi, x);
            if (!top || level > *top) top = level;
        }
        ihs.push_back(type_a(v, RationalCovector{sigma}, Rational(ceil_of(*top))));
    }
    BPolytope interval = build_or_throw(g1, SplittingChoice{RationalCovector{Rational(1)}}, normalized_halfspaces(ihs));
    BPolytope product = product_polytope(g, p.splitting(), p.extremal(), interval);

    std::vector<BHalfSpace> cuts;
    for (std::size_t v : g.leaves())
        for (const auto& c : p.copy(v).constraints())
            if (sgn(pair(g.u, c.normal)) != 0 && !implies(product.copy(v), c)) cuts.push_back(type_a(v, c.normal, c.bound));
    std::sort(cuts.begin(), cuts.end(), less_cut);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Lexicographically least order whose intermediates all stay Delzant.
    std::vector<BHalfSpace> order;
    std::vector<bool> used(cuts.size(), false);
    std::function<bool(const BPolytope&)> search = [&](const BPolytope& current) {
        if (order.size() == cuts.size()) return true;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            if (used[i]) continue;
            auto next = try_cut(current, cuts[i]);
            if (!next) continue;
            used[i] = true;
            order.push_back(cuts[i]);
            if (search(*next)) return true;
            order.pop_back();
            used[i] = false;
        }
        return false;
    };
    if (!search(product)) throw DomainError("realize: no sequence of Delzant cuts reaches the polytope");
    return LineCutSequence{g, p.splitting(), p.extremal(), std::move(interval), std::move(order)};
}

BPolytope moment_image(const ToricDescriptor& d) {
    if (const auto* c = std::get_if<CycleProduct>(&d)) {
        const LineQuotient q(c->graph.u);
        return build_or_throw(c->graph, c->splitting, normalized_halfspaces(base_halfspaces(q, c->base)));
    }
    const auto& l = std::get<LineCutSequence>(d);
    BPolytope p = product_polytope(l.graph, l.splitting, l.base, l.interval);
    for (const auto& h : l.cuts) p = symplectic_cut(p, h);
    return p;
}

BPolytope symplectic_cut(const BPolytope& p, const BHalfSpace& h) {
    const auto& g = p.graph();
    if (h.normal.size() != g.n) throw DomainError("symplectic_cut: dimension mismatch");
    const HalfPlane hp = h.as_halfplane();
    if (h.kind == BKind::B) {
        if (sgn(pair(g.u, hp.normal)) != 0) throw DomainError("symplectic_cut: B-type normal must lie in t_w");
        if (implies(p.extremal(), HalfPlane{p.quotient().restrict_covector(hp.normal), hp.bound})) return p;
        throw CutError("cut touches exceptional set: B-type boundary crosses every exceptional component");
    }
    if (h.vertex >= g.vertex_count() || !g.is_leaf(h.vertex))
        throw DomainError("symplectic_cut: A-type cut must sit at a leaf copy");
    if (implies(p.copy(h.vertex), hp)) return p;
    if (sgn(pair(modular_weight(g, leaf_edge(g, h.vertex)), hp.normal)) <= 0)
        throw CutError("cut touches exceptional set: boundary reaches exceptional component e" +
                       std::to_string(leaf_edge(g, h.vertex)));
    auto hs = p.halfspaces();
    hs.push_back(h);
    auto r = build(g, p.splitting(), hs);
    if (!r.polytope) throw CutError("cut does not give a b-polytope: " + r.diagnostics.summary());
    auto rep = is_delzant_b(*r.polytope);
    if (!rep.delzant) {
        std::string msg = "cut breaks the Delzant condition at";
        for (const auto& f : rep.failures) msg += " " + to_string(f.vertex) + " (" + f.reason + ")";
        throw CutError(msg, rep.failures);
    }
    return std::move(*r.polytope);
}

BPolytope reversed(const BPolytope& p) {
    const auto& g = p.graph();
    const std::size_t m = g.edges.size();
    WeightedGraph r = g;
    for (std::size_t j = 0; j < m; ++j) r.edges[j] = g.edges[m - 1 - j];
    const std::size_t nv = g.vertex_count();
    auto map_vertex = [&](std::size_t v) { return g.shape == GraphShape::Line ? m - v : (nv - v) % nv; };
    std::vector<BHalfSpace> hs = p.halfspaces();
    for (auto& h : hs)
        if (h.kind == BKind::A) h.vertex = map_vertex(h.vertex);
    return build_or_throw(r, p.splitting(), hs);
}

DiffeotypeLabel diffeotype_4d(const BPolytope& p) {
    const auto& g = p.graph();
    if (g.n != 2) throw DomainError("diffeotype_4d: requires n = 2");
    if (!is_delzant_b(p).delzant) throw DomainError("diffeotype_4d: b-polytope is not Delzant");
    if (g.shape == GraphShape::Cycle) return T2xS2{};

    const std::size_t m = g.edges.size();
    int positive = 0, negative = 0;
    for (std::size_t v : g.leaves()) {
        int extra = static_cast<int>(vertices(p.copy(v)).size()) - 2;
        (v % 2 == 0 ? positive : negative) += extra;
    }
    if (positive == 0 && negative == 0) {
        auto end_normal = [&](std::size_t v) {
            for (const auto& c : p.copy(v).constraints())
                if (sgn(pair(g.u, c.normal)) != 0) return c.normal;
            throw DomainError("diffeotype_4d: leaf copy has no end facet");
        };
        const RationalCovector a = end_normal(0), b = end_normal(m);
        const RationalCovector& y = p.quotient().kernel_basis().front();
        RationalMatrix mat(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            mat(i, 0) = a[i];
            mat(i, 1) = y[i];
        }
        auto coeffs = solve_square(mat, RationalVector{b[0], b[1]});
        if (!coeffs || !is_integral((*coeffs)[1])) throw DomainError("diffeotype_4d: end facets are not lattice related");
        BigInt beta = (*coeffs)[1].get_num();
        if (mpz_even_p(beta.get_mpz_t())) return S2xS2{};
        return ConnectSum{1, 1};
    }
    if (m % 2 == 1) return ConnectSum{1 + positive, 1 + negative};
    return BlowupCounts{positive, negative};
}

std::string to_string(const DiffeotypeLabel& d) {
    if (std::holds_alternative<T2xS2>(d)) return "T2xS2";
    if (std::holds_alternative<S2xS2>(d)) return "S2xS2";
    if (const auto* c = std::get_if<ConnectSum>(&d))
        return "ConnectSum{" + std::to_string(c->m) + "," + std::to_string(c->n) + "}";
    const auto& b = std::get<BlowupCounts>(d);
    return "BlowupCounts{" + std::to_string(b.positive) + "," + std::to_string(b.negative) + "}";
}

std::string to_string(SurfaceKind k) { return k == SurfaceKind::S2 ? "S2" : "T2"; }

SurfaceDescriptor classify_surface(const SurfaceInvariants& inv) {
    if (inv.z_count < 1) throw DomainError("classify_surface: at least one exceptional circle is required");
    if (static_cast<std::size_t>(inv.z_count) != inv.periods.size())
        throw DomainError("classify_surface: z_count does not match the number of periods");
    for (double c : inv.periods)
        if (!(c > 0) || !std::isfinite(c)) throw DomainError("classify_surface: periods must be positive");
    if (!std::isfinite(inv.volume)) throw DomainError("classify_surface: volume must be finite");
    if (inv.kind == SurfaceKind::T2 && inv.z_count % 2 != 0)
        throw DomainError("classify_surface: T2 needs an even number of exceptional circles");
    SurfaceDescriptor d;
    d.kind = inv.kind;
    const int k = inv.z_count;
    for (int j = 0; j < k; ++j) {
        if (inv.kind == SurfaceKind::S2)
            d.z_levels.push_back(-1.0 + 2.0 * (j + 1) / (k + 1));
        else
            d.z_levels.push_back(2.0 * std::numbers::pi * j / k);
    }
    d.periods = inv.periods;
    d.volume = inv.volume;
    return d;
}

bool equivalent(const SurfaceDescriptor& a, const SurfaceDescriptor& b, double tolerance) {
    if (a.kind != b.kind || a.periods.size() != b.periods.size()) return false;
    for (std::size_t i = 0; i < a.periods.size(); ++i)
        if (std::abs(a.periods[i] - b.periods[i]) > tolerance) return false;
    return std::abs(a.volume - b.volume) <= tolerance;
}

}  // namespace btoric
