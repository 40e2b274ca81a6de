#include "btoric/classify.hpp"

#include "support/data.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <numbers>

using namespace btoric;
using gen::covec;
using gen::vec;

namespace {

// [0,1] x (end at xi2 = 2) over one edge with u = (0, 1).
BPolytope rectangle() {
    WeightedGraph g;
    g.n = 2;
    g.u = vec({0, 1});
    g.edges = {{1, Rational(1)}};
    std::vector<BHalfSpace> hs{type_b(covec({1, 0}), 1), type_b(covec({1, 0}), 0, Side::Ge),
                               type_a(0, covec({0, 1}), 2), type_a(1, covec({0, 1}), 2)};
    return build_or_throw(g, default_splitting(g), hs);
}

bool subset_per_copy(const BPolytope& inner, const BPolytope& outer) {
    for (std::size_t v = 0; v < outer.copies().size(); ++v)
        for (const auto& c : outer.copy(v).constraints())
            if (!implies(inner.copy(v), c)) return false;
    return true;
}

BPolytope random_bpolytope(gen::Rng& rng, std::size_t n) {
    bool cycle = gen::coin(rng, 0.25);
    std::size_t m = cycle ? 2 * gen::uniform(rng, 1, 2) : gen::uniform(rng, 1, 4);
    return gen::random_delzant_bpolytope(rng, cycle ? GraphShape::Cycle : GraphShape::Line, m, n, 3);
}

DiffeotypeLabel swapped(const DiffeotypeLabel& d) {
    if (const auto* c = std::get_if<ConnectSum>(&d)) return ConnectSum{c->n, c->m};
    return d;
}

}  // namespace

TEST_CASE("cycle realizes as a product") {
    auto p = data::bpolytope("cycle_product_bpolytope.json");
    auto d = realize(p);
    REQUIRE(std::holds_alternative<CycleProduct>(d));
    CHECK(std::get<CycleProduct>(d).graph == p.graph());
    CHECK(std::get<CycleProduct>(d).base == p.extremal());
    CHECK(canonical_form(moment_image(d)) == canonical_form(p));
    CHECK(diffeotype_4d(p) == DiffeotypeLabel{T2xS2{}});
}

TEST_CASE("product needs no cuts") {
    auto p = data::bpolytope("interval_times_line_bpolytope.json");
    auto d = realize(p);
    REQUIRE(std::holds_alternative<LineCutSequence>(d));
    const auto& l = std::get<LineCutSequence>(d);
    CHECK(l.cuts.empty());
    CHECK(l.interval.graph().n == 1);
    CHECK(canonical_form(moment_image(d)) == canonical_form(p));
    CHECK(diffeotype_4d(p) == DiffeotypeLabel{S2xS2{}});
    CHECK(to_string(diffeotype_4d(p)) == "S2xS2");
}

TEST_CASE("a single corner cut") {
    auto r = rectangle();
    CHECK(diffeotype_4d(r) == DiffeotypeLabel{S2xS2{}});
    // Corner (1, 2) of copy 0: tight normals (1,0) and (0,1), cut 1 below.
    auto cut = type_a(0, covec({1, 1}), 2);
    auto c = symplectic_cut(r, cut);
    CHECK(vertices(c.copy(0)).size() == 2);
    CHECK(vertices(c.copy(0)) == std::vector<RationalVector>{vec({0, 2}), vec({1, 1})});
    CHECK(is_delzant_b(c).delzant);
    CHECK(diffeotype_4d(c) == DiffeotypeLabel{ConnectSum{1, 1}});
    CHECK(to_string(diffeotype_4d(c)) == "ConnectSum{1,1}");

    auto d = realize(c);
    REQUIRE(std::holds_alternative<LineCutSequence>(d));
    CHECK(std::get<LineCutSequence>(d).cuts.size() == 1);
    CHECK(canonical_form(moment_image(d)) == canonical_form(c));

    // Unimodular blow-up of the corner (1, 2): vertex count +1.
    auto blow = symplectic_cut(r, type_a(0, covec({1, 1}), Rational(5, 2)));
    CHECK(vertices(blow.copy(0)).size() == 3);
    CHECK(diffeotype_4d(blow) == DiffeotypeLabel{ConnectSum{2, 1}});
    CHECK(diffeotype_4d(reversed(blow)) == DiffeotypeLabel{ConnectSum{1, 2}});
}

TEST_CASE("cut errors") {
    auto r = rectangle();
    CHECK_THROWS_WITH_AS(symplectic_cut(r, type_b(covec({1, 0}), Rational(1, 2))),
                         doctest::Contains("cut touches exceptional set"), CutError);
    CHECK(symplectic_cut(r, type_b(covec({1, 0}), 5)) == r);
    CHECK(symplectic_cut(r, type_a(0, covec({1, 1}), 10)) == r);
    CHECK_THROWS_WITH_AS(symplectic_cut(r, type_a(0, covec({1, -1}), 0)),
                         doctest::Contains("cut touches exceptional set"), CutError);
    // Non-unimodular chop at (1, 2) leaves det 2 corners.
    try {
        symplectic_cut(r, type_a(0, covec({2, 1}), 3));
        FAIL("expected CutError");
    } catch (const CutError& e) {
        CHECK_FALSE(e.failures.empty());
        CHECK(std::string(e.what()).find("Delzant") != std::string::npos);
    }
    CHECK_THROWS_AS(symplectic_cut(r, type_a(0, covec({1}), 0)), DomainError);
    CHECK_THROWS_AS(realize(data::bpolytope("nondelzant_leaf_bpolytope.json")), DomainError);

    auto cyc = data::bpolytope("cycle_product_bpolytope.json");
    CHECK_THROWS_AS(symplectic_cut(cyc, type_a(0, covec({1, 1}), 0)), DomainError);
}

TEST_CASE("diffeotype requires n = 2") {
    gen::Rng rng(501);
    auto p = gen::random_delzant_bpolytope(rng, GraphShape::Line, 1, 3);
    CHECK_THROWS_AS(diffeotype_4d(p), DomainError);
}

TEST_CASE("property: realize and moment_image round trip") {
    gen::Rng rng(502);
    for (int i = 0; i < 200; ++i) {
        auto p = random_bpolytope(rng, gen::uniform(rng, 1, 3));
        auto d = realize(p);
        std::visit(
            [&](const auto& x) {
                CHECK(x.graph == p.graph());
                CHECK(x.base == extremal_polytope(p));
            },
            d);
        auto back = moment_image(d);
        CHECK(is_delzant_b(back).delzant);
        CHECK(canonical_form(back) == canonical_form(p));
    }
}

TEST_CASE("property: cuts keep graph and extremal polytope and shrink each copy") {
    gen::Rng rng(503);
    int cuts = 0;
    for (int i = 0; i < 300; ++i) {
        auto p = gen::random_delzant_bpolytope(rng, GraphShape::Line, gen::uniform(rng, 1, 3), gen::uniform(rng, 2, 3), 0);
        auto c = gen::random_corner_cut(rng, p);
        if (!c) continue;
        ++cuts;
        CHECK(c->graph() == p.graph());
        CHECK(same_polyhedron(c->extremal(), p.extremal()));
        CHECK(subset_per_copy(*c, p));
        CHECK(is_delzant_b(*c).delzant);
    }
    CHECK(cuts > 100);
}

TEST_CASE("property: diffeotype invariant under canonical form and reversal") {
    gen::Rng rng(504);
    int connect = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = random_bpolytope(rng, 2);
        auto label = diffeotype_4d(p);
        CHECK(diffeotype_4d(canonical_form(p)) == label);
        auto r = reversed(p);
        CHECK(r.graph().edges.size() == p.graph().edges.size());
        if (p.graph().shape == GraphShape::Line && p.graph().edges.size() % 2 == 1)
            CHECK(diffeotype_4d(r) == swapped(label));
        else
            CHECK(diffeotype_4d(r) == label);
        CHECK(reversed(r) == p);
        connect += std::holds_alternative<ConnectSum>(label);
    }
    CHECK(connect > 0);
}

TEST_CASE("surface classification") {
    SurfaceInvariants s{SurfaceKind::S2, 1, {2.0}, 0.5};
    auto d = classify_surface(s);
    CHECK(d.kind == SurfaceKind::S2);
    CHECK(d.z_levels == std::vector<double>{0.0});
    CHECK(d.periods == std::vector<double>{2.0});
    CHECK(d.volume == 0.5);

    SurfaceInvariants t{SurfaceKind::T2, 2, {1.0, 3.0}, -1.0};
    auto dt = classify_surface(t);
    CHECK(dt.z_levels.size() == 2);
    CHECK(dt.z_levels[1] == doctest::Approx(std::numbers::pi));
    CHECK(to_string(dt.kind) == "T2");

    CHECK_THROWS_WITH_AS(classify_surface({SurfaceKind::T2, 3, {1, 1, 1}, 0}), doctest::Contains("even"), DomainError);
    CHECK_THROWS_AS(classify_surface({SurfaceKind::S2, 0, {}, 0}), DomainError);
    CHECK_THROWS_AS(classify_surface({SurfaceKind::S2, 2, {1.0}, 0}), DomainError);
    CHECK_THROWS_AS(classify_surface({SurfaceKind::S2, 1, {-1.0}, 0}), DomainError);
}

TEST_CASE("property: surface classification is a congruence") {
    gen::Rng rng(505);
    std::uniform_real_distribution<double> period(0.1, 10.0), volume(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        SurfaceInvariants a;
        a.kind = gen::coin(rng) ? SurfaceKind::S2 : SurfaceKind::T2;
        a.z_count = a.kind == SurfaceKind::T2 ? 2 * gen::uniform(rng, 1, 3) : gen::uniform(rng, 1, 5);
        for (int k = 0; k < a.z_count; ++k) a.periods.push_back(period(rng));
        a.volume = volume(rng);
        SurfaceInvariants b = a;
        auto da = classify_surface(a), db = classify_surface(b);
        CHECK(da.z_levels == db.z_levels);
        CHECK(equivalent(da, db));
        CHECK(equivalent(da, db, 0.0));
        // Numerically sourced volume within tolerance still matches.
        b.volume += 5e-7;
        CHECK(equivalent(da, classify_surface(b)));
        b.volume += 1e-3;
        CHECK_FALSE(equivalent(da, classify_surface(b)));
        SurfaceInvariants c = a;
        c.periods[gen::uniform(rng, 0, a.z_count - 1)] += 0.5;
        CHECK_FALSE(equivalent(da, classify_surface(c)));
    }
}
