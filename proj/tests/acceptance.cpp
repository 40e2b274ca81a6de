// Acceptance suite: one PASS/FAIL line per criterion, with wall time against
// its budget. Exit status is nonzero if any criterion fails.

#include "btoric/cli.hpp"
#include "btoric/classify.hpp"
#include "btoric/json_io.hpp"
#include "btoric/surface_lab.hpp"

#include "support/data.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace btoric;
using io::json;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Verdict()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < budget_s;
    bool pass = v.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s (%.3f s, budget %.0f s)%s%s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
                v.detail.empty() ? "" : " - ", v.detail.c_str());
    if (!in_time) std::printf("     over budget\n");
    std::fflush(stdout);
}

cli::Outcome run_cli(const std::string& command, const std::string& file) {
    cli::Options o;
    o.command = command;
    return cli::run(o, data::read(file));
}

std::vector<oracle::Constraint> to_oracle(const Polyhedron& p) {
    std::vector<oracle::Constraint> cs;
    for (const auto& h : p.constraints()) cs.push_back({h.normal.coords, h.bound});
    return cs;
}

// [0,1] x (end at xi2 = 2) over one edge, optionally chopped at the corner (1, 2) of copy 0.
BPolytope rectangle(bool chopped) {
    WeightedGraph g;
    g.n = 2;
    g.u = gen::vec({0, 1});
    g.edges = {{1, Rational(1)}};
    std::vector<BHalfSpace> hs{type_b(gen::covec({1, 0}), 1), type_b(gen::covec({1, 0}), 0, Side::Ge),
                               type_a(0, gen::covec({0, 1}), 2), type_a(1, gen::covec({0, 1}), 2)};
    BPolytope p = build_or_throw(g, default_splitting(g), hs);
    return chopped ? symplectic_cut(p, type_a(0, gen::covec({1, 1}), 2)) : p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string unit_binary = argc > 1 ? argv[1] : "";

    criterion(1, "golden examples", 1.0, [] {
        Verdict v;
        auto g51 = run_cli("validate-graph", "single_edge_graph.json");
        v.require(g51.exit_code == 0, "single edge graph rejected");
        auto g53 = run_cli("validate-graph", "two_edge_cycle_graph.json");
        v.require(g53.exit_code == 0, "two-edge cycle rejected");
        auto left = run_cli("delzant-check", "nondelzant_leaf_bpolytope.json");
        v.require(left.exit_code == 2, "non-Delzant leaf example not rejected");
        auto lj = json::parse(left.output);
        const auto& fails = lj["payload"]["report"]["failures"];
        v.require(!fails.empty() && fails[0].contains("vertex") && fails[0].contains("reason"),
                  "no vertex-level diagnostic for non-Delzant leaf example");
        auto right = run_cli("classify", "cycle_product_bpolytope.json");
        v.require(right.exit_code == 0, "cycle product not accepted");
        v.require(json::parse(right.output)["payload"]["descriptor"]["kind"] == "CycleProduct",
                  "cycle product not a CycleProduct");
        v.require(is_delzant_b(data::bpolytope("cycle_product_bpolytope.json")).delzant, "cycle product not Delzant");
        return v;
    });

    criterion(2, "classic Delzant test vs brute-force oracle", 30.0, [] {
        Verdict v;
        gen::Rng rng(9002);
        int n = 0, yes = 0;
        for (int i = 0; i < 400; ++i) {
            std::size_t d = gen::uniform(rng, 2, 3);
            Polyhedron p = gen::coin(rng) ? gen::random_delzant(rng, d) : gen::random_polytope(rng, d, 10);
            if (p.constraints().size() > 10) continue;
            bool mine = is_delzant(p).delzant;
            bool theirs = oracle::is_delzant(to_oracle(p), d).delzant;
            v.require(mine == theirs, "disagreement on instance " + std::to_string(i));
            ++n;
            yes += mine;
        }
        v.require(n >= 200, "corpus too small");
        v.detail = v.ok ? std::to_string(n) + " instances, " + std::to_string(yes) + " Delzant" : v.detail;
        return v;
    });

    criterion(3, "realize / moment_image round trip", 60.0, [] {
        Verdict v;
        gen::Rng rng(9003);
        int n = 0;
        for (int rep = 0; rep < 8; ++rep) {
            for (std::size_t dim = 1; dim <= 3; ++dim) {
                for (std::size_t m = 1; m <= 4; ++m) {
                    auto p = gen::random_delzant_bpolytope(rng, GraphShape::Line, m, dim, 2);
                    v.require(canonical_form(moment_image(realize(p))) == canonical_form(p), "line round trip failed");
                    ++n;
                }
                for (std::size_t m : {2u, 4u}) {
                    auto p = gen::random_delzant_bpolytope(rng, GraphShape::Cycle, m, dim);
                    v.require(canonical_form(moment_image(realize(p))) == canonical_form(p), "cycle round trip failed");
                    ++n;
                }
            }
        }
        v.require(n >= 100, "corpus too small");
        if (v.ok) v.detail = std::to_string(n) + " b-polytopes";
        return v;
    });

    criterion(4, "4-d diffeotypes", 5.0, [] {
        Verdict v;
        gen::Rng rng(9004);
        v.require(diffeotype_4d(data::bpolytope("cycle_product_bpolytope.json")) == DiffeotypeLabel{T2xS2{}}, "cycle product");
        for (int i = 0; i < 20; ++i) {
            auto p = gen::random_delzant_bpolytope(rng, GraphShape::Cycle, 2 * gen::uniform(rng, 1, 2), 2);
            v.require(diffeotype_4d(p) == DiffeotypeLabel{T2xS2{}}, "cycle not T2xS2");
        }
        v.require(diffeotype_4d(rectangle(false)) == DiffeotypeLabel{S2xS2{}}, "uncut rectangle not S2xS2");
        v.require(diffeotype_4d(data::bpolytope("interval_times_line_bpolytope.json")) == DiffeotypeLabel{S2xS2{}},
                  "interval times line not S2xS2");
        for (int i = 0; i < 20; ++i) {
            auto p = gen::random_delzant_bpolytope(rng, GraphShape::Line, 1, 2, 2);
            auto d = std::get<LineCutSequence>(realize(p));
            d.cuts.clear();
            v.require(diffeotype_4d(moment_image(d)) == DiffeotypeLabel{S2xS2{}}, "uncut base not S2xS2");
        }
        auto c = rectangle(true);
        v.require(diffeotype_4d(c) == DiffeotypeLabel{ConnectSum{1, 1}}, "single corner cut is " + to_string(diffeotype_4d(c)));
        return v;
    });

    criterion(5, "Liouville volume", 20.0, [] {
        Verdict v;
        auto cfg = surface::QuadratureConfig::defaults();
        auto sym = surface::liouville_volume(surface::sphere_log_model(1.0), cfg);
        v.require(sym.converged && std::abs(sym.value) < 1e-6, "c dh/h volume " + fmt(sym.value));
        auto m = surface::sphere_pole_model(1.0, {1.0});
        auto a = surface::liouville_volume(m, cfg);
        v.require(a.converged && std::abs(a.value - 4 * std::numbers::pi) < 1e-6, "(1/h + 1) volume " + fmt(a.value));
        auto other = m;
        other.defining.kind = surface::DefiningFunction::Kind::Cubic;
        auto b = surface::liouville_volume(other, cfg);
        v.require(b.converged && std::abs(a.value - b.value) < 1e-5, "defining functions disagree by " + fmt(a.value - b.value));
        if (v.ok) v.detail = "errors " + fmt(std::abs(sym.value)) + ", " + fmt(std::abs(a.value - 4 * std::numbers::pi)) + ", " +
                             fmt(std::abs(a.value - b.value));
        return v;
    });

    criterion(6, "modular period routes", 20.0, [] {
        Verdict v;
        auto cfg = surface::QuadratureConfig::defaults();
        double worst = 0;
        for (const auto& m : {surface::sphere_log_model(1.0), surface::torus_sine_model(1.0)}) {
            for (double z : m.z_set()) {
                auto p = surface::modular_period(m, z, cfg);
                worst = std::max(worst, std::abs(p.loop_integral - p.hamiltonian));
                for (double lambda : {0.5, 3.0}) {
                    auto q = surface::modular_period(m.scaled(lambda), z, cfg);
                    v.require(std::abs(q.loop_integral - lambda * p.loop_integral) < 1e-6 &&
                                  std::abs(q.hamiltonian - lambda * p.hamiltonian) < 1e-6,
                              "period not linear in lambda");
                }
            }
        }
        v.require(worst < 1e-6, "routes differ by " + fmt(worst));
        if (v.ok) v.detail = "max route gap " + fmt(worst);
        return v;
    });

    criterion(7, "moment map residuals", 10.0, [] {
        Verdict v;
        auto check = [](const char* file) {
            auto in = io::moment_input_from_json(data::load(file));
            return surface::verify_moment_map(in.model, in.moment, 100, 1e-3).max_residual;
        };
        double r22 = check("s2_log_moment.json");
        double r52 = check("s2_product_moment.json");
        double bad = check("s2_product_moment_unscaled.json");
        v.require(r22 < 1e-8, "log moment residual " + fmt(r22));
        v.require(r52 < 1e-8, "product moment residual " + fmt(r52));
        v.require(bad > 1e-2, "negative control residual only " + fmt(bad));
        if (v.ok) v.detail = "residuals " + fmt(r22) + ", " + fmt(r52) + "; control " + fmt(bad);
        return v;
    });

    criterion(8, "invariant suites", 120.0, [&] {
        Verdict v;
        v.require(!unit_binary.empty(), "unit test binary path not given");
        if (!v.ok) return v;
        std::string cmd = "\"" + unit_binary + "\" --no-version --minimal > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        v.require(rc == 0, "unit tests exited with status " + std::to_string(rc));
        return v;
    });

    return failures == 0 ? 0 : 1;
}
