#include "btoric/json_io.hpp"

#include <cmath>

namespace btoric::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t index_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

double number_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>()).get_d();
        } catch (const DomainError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a number");
}

std::vector<Rational> rationals_from_json(const json& j, const std::string& where, std::size_t dim) {
    if (!j.is_array()) fail(where, "expected an array");
    if (j.size() != dim) fail(where, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Side side_from_json(const json& j, const std::string& where) {
    if (j == "le") return Side::Le;
    if (j == "ge") return Side::Ge;
    fail(where, "side must be \"le\" or \"ge\"");
}

json halfplanes_json(const std::vector<HalfPlane>& hs) {
    json arr = json::array();
    for (const auto& h : hs) arr.push_back({{"normal", to_json(h.normal)}, {"bound", to_json(h.bound)}});
    return arr;
}

json vertices_json(const std::vector<RationalVector>& vs) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(to_json(v));
    return arr;
}

json optional_index(const std::optional<std::size_t>& i) { return i ? json(*i) : json(nullptr); }

surface::DefiningFunction defining_from_json(const json& j) {
    surface::DefiningFunction d;
    if (j == "linear") d.kind = surface::DefiningFunction::Kind::Linear;
    else if (j == "cubic") d.kind = surface::DefiningFunction::Kind::Cubic;
    else if (j == "sine") d.kind = surface::DefiningFunction::Kind::Sine;
    else fail("model.defining", "expected \"linear\", \"cubic\" or \"sine\"");
    return d;
}

}  // namespace

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float())
        fail(where, "real-valued number " + j.dump() + " rejected; exact data must be a rational string \"p/q\"");
    if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const DomainError& e) {
        fail(where, e.what());
    }
}

json to_json(const Rational& q) { return to_string(q); }

RationalVector vector_from_json(const json& j, const std::string& where, std::size_t dim) {
    return RationalVector(rationals_from_json(j, where, dim));
}

RationalCovector covector_from_json(const json& j, const std::string& where, std::size_t dim) {
    return RationalCovector(rationals_from_json(j, where, dim));
}

json to_json(const RationalVector& v) {
    json arr = json::array();
    for (const auto& c : v.coords) arr.push_back(to_json(c));
    return arr;
}

json to_json(const RationalCovector& v) {
    json arr = json::array();
    for (const auto& c : v.coords) arr.push_back(to_json(c));
    return arr;
}

WeightedGraph graph_from_json(const json& j) {
    WeightedGraph g;
    const json& shape = field(j, "shape", "graph");
    if (shape == "line") g.shape = GraphShape::Line;
    else if (shape == "cycle") g.shape = GraphShape::Cycle;
    else fail("graph.shape", "expected \"line\" or \"cycle\"");
    g.n = index_from_json(field(j, "n", "graph"), "graph.n");
    if (g.n == 0 || g.n > 8) fail("graph.n", "dimension must be between 1 and 8");
    g.u = vector_from_json(field(j, "u", "graph"), "graph.u", g.n);
    const json& edges = field(j, "edges", "graph");
    if (!edges.is_array()) fail("graph.edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string where = "graph.edges[" + std::to_string(i) + "]";
        const json& s = field(edges[i], "sign", where);
        if (!s.is_number_integer()) fail(where + ".sign", "expected 1 or -1");
        g.edges.push_back({s.get<int>(), rational_from_json(field(edges[i], "period", where), where + ".period")});
    }
    return g;
}

json to_json(const WeightedGraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back({{"sign", e.sign}, {"period", to_json(e.period)}});
    return {{"shape", g.shape == GraphShape::Line ? "line" : "cycle"}, {"n", g.n}, {"u", to_json(g.u)}, {"edges", edges}};
}

json to_json(const std::vector<GraphViolation>& v) {
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back({{"code", x.code}, {"message", x.message}, {"edge", optional_index(x.edge)},
                       {"vertex", optional_index(x.vertex)}});
    return arr;
}

Polyhedron polyhedron_from_json(const json& j) {
    std::size_t dim = index_from_json(field(j, "dim", "polyhedron"), "polyhedron.dim");
    if (dim == 0 || dim > 8) fail("polyhedron.dim", "dimension must be between 1 and 8");
    const json& cs = field(j, "constraints", "polyhedron");
    if (!cs.is_array()) fail("polyhedron.constraints", "expected an array");
    std::vector<HalfPlane> hs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string where = "polyhedron.constraints[" + std::to_string(i) + "]";
        HalfPlane h{covector_from_json(field(cs[i], "normal", where), where + ".normal", dim),
                    rational_from_json(field(cs[i], "bound", where), where + ".bound")};
        if (h.normal.is_zero()) fail(where + ".normal", "zero normal");
        hs.push_back(std::move(h));
    }
    return Polyhedron(dim, std::move(hs));
}

json to_json(const Polyhedron& p) { return {{"dim", p.dim()}, {"constraints", halfplanes_json(p.constraints())}}; }

json describe(const Polyhedron& p) {
    Polyhedron q = prune_redundant(p);
    json out = to_json(q);
    if (is_empty(q)) {
        out["empty"] = true;
        out["vertices"] = nullptr;
        return out;
    }
    out["empty"] = false;
    out["bounded"] = is_bounded(q);
    out["vertices"] = vertices_json(vertices(q));
    return out;
}

BHalfSpace halfspace_from_json(const json& j, std::size_t dim) {
    const json& type = field(j, "type", "halfspace");
    BHalfSpace h;
    if (type == "A") {
        h.kind = BKind::A;
        h.vertex = index_from_json(field(j, "vertex", "halfspace"), "halfspace.vertex");
    } else if (type == "B") {
        h.kind = BKind::B;
    } else {
        fail("halfspace.type", "expected \"A\" or \"B\"");
    }
    h.normal = covector_from_json(field(j, "normal", "halfspace"), "halfspace.normal", dim);
    h.bound = rational_from_json(field(j, "bound", "halfspace"), "halfspace.bound");
    h.side = j.contains("side") ? side_from_json(j["side"], "halfspace.side") : Side::Le;
    return h;
}

json to_json(const BHalfSpace& h) {
    json out = {{"type", h.kind == BKind::A ? "A" : "B"}};
    if (h.kind == BKind::A) out["vertex"] = h.vertex;
    out["normal"] = to_json(h.normal);
    out["bound"] = to_json(h.bound);
    out["side"] = h.side == Side::Le ? "le" : "ge";
    return out;
}

BPolytopeInput bpolytope_input_from_json(const json& j) {
    BPolytopeInput in;
    in.graph = graph_from_json(field(j, "graph", "bpolytope"));
    if (j.contains("splitting")) in.splitting.X = covector_from_json(j["splitting"], "bpolytope.splitting", in.graph.n);
    const json& hs = field(j, "halfspaces", "bpolytope");
    if (!hs.is_array()) fail("bpolytope.halfspaces", "expected an array");
    for (const auto& h : hs) in.halfspaces.push_back(halfspace_from_json(h, in.graph.n));
    return in;
}

json to_json(const BPolytope& p) {
    json hs = json::array();
    for (const auto& h : p.halfspaces()) hs.push_back(to_json(h));
    json copies = json::array();
    for (std::size_t v = 0; v < p.copies().size(); ++v) {
        json c = describe(p.copy(v));
        c["vertex_id"] = v;
        copies.push_back(c);
    }
    return {{"graph", to_json(p.graph())},
            {"splitting", to_json(p.splitting().X)},
            {"halfspaces", hs},
            {"copies", copies},
            {"extremal", describe(p.extremal())}};
}

json to_json(const BPolytopeDiagnostics& d) {
    json arr = json::array();
    for (const auto& v : d.violations)
        arr.push_back({{"code", v.code},
                       {"message", v.message},
                       {"vertex", optional_index(v.vertex)},
                       {"edge", optional_index(v.edge)},
                       {"halfspace", optional_index(v.halfspace)}});
    return arr;
}

json to_json(const BDelzantReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"copy", optional_index(f.copy)}, {"vertex", to_json(f.vertex)}, {"reason", f.reason}});
    return {{"delzant", r.delzant}, {"failures", fails}};
}

json to_json(const DelzantReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back({{"vertex", to_json(f.vertex)}, {"reason", f.reason}});
    return {{"delzant", r.delzant}, {"failures", fails}};
}

json to_json(const ToricDescriptor& d) {
    if (const auto* c = std::get_if<CycleProduct>(&d))
        return {{"kind", "CycleProduct"},
                {"graph", to_json(c->graph)},
                {"splitting", to_json(c->splitting.X)},
                {"base", describe(c->base)}};
    const auto& l = std::get<LineCutSequence>(d);
    json ihs = json::array();
    for (const auto& h : l.interval.halfspaces()) ihs.push_back(to_json(h));
    json cuts = json::array();
    for (const auto& h : l.cuts) cuts.push_back(to_json(h));
    return {{"kind", "LineCutSequence"},
            {"graph", to_json(l.graph)},
            {"splitting", to_json(l.splitting.X)},
            {"base", describe(l.base)},
            {"interval", {{"graph", to_json(l.interval.graph())}, {"halfspaces", ihs}}},
            {"cuts", cuts}};
}

json to_json(const DiffeotypeLabel& d) {
    json out = {{"name", to_string(d)}};
    if (const auto* c = std::get_if<ConnectSum>(&d)) {
        out["kind"] = "ConnectSum";
        out["m"] = c->m;
        out["n"] = c->n;
    } else if (const auto* b = std::get_if<BlowupCounts>(&d)) {
        out["kind"] = "BlowupCounts";
        out["positive"] = b->positive;
        out["negative"] = b->negative;
    } else {
        out["kind"] = std::holds_alternative<T2xS2>(d) ? "T2xS2" : "S2xS2";
    }
    return out;
}

SurfaceInvariants surface_invariants_from_json(const json& j) {
    SurfaceInvariants s;
    const json& kind = field(j, "surface", "invariants");
    if (kind == "S2") s.kind = SurfaceKind::S2;
    else if (kind == "T2") s.kind = SurfaceKind::T2;
    else fail("invariants.surface", "expected \"S2\" or \"T2\"");
    const json& z = field(j, "z_count", "invariants");
    if (!z.is_number_integer() || z.get<int>() <= 0) fail("invariants.z_count", "expected a positive integer");
    s.z_count = z.get<int>();
    const json& ps = field(j, "periods", "invariants");
    if (!ps.is_array()) fail("invariants.periods", "expected an array");
    for (const auto& p : ps) s.periods.push_back(number_from_json(p, "invariants.periods"));
    s.volume = number_from_json(field(j, "volume", "invariants"), "invariants.volume");
    return s;
}

json to_json(const SurfaceInvariants& s) {
    return {{"surface", to_string(s.kind)}, {"z_count", s.z_count}, {"periods", s.periods}, {"volume", s.volume}};
}

json to_json(const SurfaceDescriptor& s) {
    return {{"surface", to_string(s.kind)}, {"z_levels", s.z_levels}, {"periods", s.periods}, {"volume", s.volume}};
}

surface::BSurfaceModel surface_model_from_json(const json& j) {
    surface::BSurfaceModel m;
    const json& kind = field(j, "surface", "model");
    if (kind == "S2") m.kind = SurfaceKind::S2;
    else if (kind == "T2") m.kind = SurfaceKind::T2;
    else fail("model.surface", "expected \"S2\" or \"T2\"");
    const json& form = field(j, "form", "model");
    const json& family = field(form, "family", "model.form");
    if (family == "pole_sum") {
        m.form.family = surface::FormCoefficient::Family::PoleSum;
        const json& poles = field(form, "poles", "model.form");
        if (!poles.is_array()) fail("model.form.poles", "expected an array");
        for (const auto& p : poles)
            m.form.poles.emplace_back(number_from_json(field(p, "z", "model.form.poles"), "model.form.poles.z"),
                                      number_from_json(field(p, "residue", "model.form.poles"), "model.form.poles.residue"));
        if (form.contains("polynomial")) {
            if (!form["polynomial"].is_array()) fail("model.form.polynomial", "expected an array");
            for (const auto& a : form["polynomial"]) m.form.polynomial.push_back(number_from_json(a, "model.form.polynomial"));
        }
    } else if (family == "inverse_sine") {
        m.form.family = surface::FormCoefficient::Family::InverseSine;
        if (form.contains("scale")) m.form.scale = number_from_json(form["scale"], "model.form.scale");
    } else {
        fail("model.form.family", "expected \"pole_sum\" or \"inverse_sine\"");
    }
    if (j.contains("defining")) m.defining = defining_from_json(j["defining"]);
    if (j.contains("angle_period")) {
        m.angle_period = number_from_json(j["angle_period"], "model.angle_period");
        if (!(m.angle_period > 0)) fail("model.angle_period", "must be positive");
    }
    for (const auto& [z, r] : m.form.poles)
        if (!std::isfinite(z) || !std::isfinite(r)) fail("model.form.poles", "non-finite value");
    return m;
}

json to_json(const surface::BSurfaceModel& m) {
    json form;
    if (m.form.family == surface::FormCoefficient::Family::PoleSum) {
        json poles = json::array();
        for (const auto& [z, r] : m.form.poles) poles.push_back({{"z", z}, {"residue", r}});
        form = {{"family", "pole_sum"}, {"poles", poles}, {"polynomial", m.form.polynomial}};
    } else {
        form = {{"family", "inverse_sine"}, {"scale", m.form.scale}};
    }
    return {{"surface", to_string(m.kind)}, {"form", form}, {"defining", m.defining.name()}, {"angle_period", m.angle_period}};
}

MomentInput moment_input_from_json(const json& j) {
    MomentInput in;
    const json& factors = field(j, "factors", "moment");
    if (!factors.is_array() || factors.empty() || factors.size() > 2) fail("moment.factors", "expected one or two models");
    for (const auto& f : factors) in.model.factors.push_back(surface_model_from_json(f));
    const json& comps = field(j, "components", "moment");
    if (!comps.is_array() || comps.empty()) fail("moment.components", "expected a non-empty array");
    for (const auto& c : comps) {
        surface::MomentComponent mc;
        const json& gen = field(c, "generator", "moment.components");
        if (!gen.is_array() || gen.size() != in.model.factors.size())
            fail("moment.components.generator", "expected one entry per factor");
        for (const auto& x : gen) mc.generator.push_back(number_from_json(x, "moment.components.generator"));
        const json& terms = field(c, "terms", "moment.components");
        if (!terms.is_array()) fail("moment.components.terms", "expected an array");
        for (const auto& t : terms) {
            surface::MomentTerm mt;
            const json& kind = field(t, "kind", "moment.terms");
            if (kind == "log_abs") mt.kind = surface::MomentTerm::Kind::LogAbs;
            else if (kind == "linear") mt.kind = surface::MomentTerm::Kind::Linear;
            else if (kind == "log_cot_half") mt.kind = surface::MomentTerm::Kind::LogCotHalf;
            else fail("moment.terms.kind", "expected \"log_abs\", \"linear\" or \"log_cot_half\"");
            mt.factor = t.contains("factor") ? index_from_json(t["factor"], "moment.terms.factor") : 0;
            if (mt.factor >= in.model.factors.size()) fail("moment.terms.factor", "no such factor");
            if (t.contains("coefficient")) mt.coefficient = number_from_json(t["coefficient"], "moment.terms.coefficient");
            if (t.contains("shift")) mt.shift = number_from_json(t["shift"], "moment.terms.shift");
            mc.terms.push_back(mt);
        }
        in.moment.push_back(std::move(mc));
    }
    if (j.contains("density")) {
        in.density = index_from_json(j["density"], "moment.density");
        if (in.density < 2 || in.density > 2000) fail("moment.density", "must be between 2 and 2000");
    }
    if (j.contains("collar")) in.collar = number_from_json(j["collar"], "moment.collar");
    return in;
}

}  // namespace btoric::io
