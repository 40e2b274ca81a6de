#include "btoric/cli.hpp"

#include "btoric/json_io.hpp"
#include "btoric/svg.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace btoric::cli {

namespace {

using io::json;

// Raised for bad flags; reported like malformed input.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Status { Ok, Violation, Error };

struct Result {
    Status status = Status::Ok;
    json payload = json::object();
    std::optional<std::string> svg;
};

int exit_code(Status s) {
    switch (s) {
        case Status::Ok: return 0;
        case Status::Violation: return 2;
        case Status::Error: return 1;
    }
    return 1;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Violation: return "violation";
        case Status::Error: return "error";
    }
    return "error";
}

Result violation(json payload) { return {Status::Violation, std::move(payload), std::nullopt}; }

json message_list(const std::vector<std::string>& msgs, const std::string& code) {
    json arr = json::array();
    for (const auto& m : msgs) arr.push_back({{"code", code}, {"message", m}});
    return arr;
}

std::vector<double> parse_ladder(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw UsageError("--epsilon-ladder: cannot parse \"" + s + "\"");
        return v;
    };
    std::vector<std::string> parts;
    char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
    try {
        if (sep == ':') {
            if (parts.size() != 3) throw UsageError("--epsilon-ladder: expected start:stop:ratio");
            return surface::QuadratureConfig::ladder(number(parts[0]), number(parts[1]), number(parts[2]));
        }
    } catch (const DomainError& e) {
        throw UsageError(std::string("--epsilon-ladder: ") + e.what());
    }
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(number(p));
    return out;
}

surface::QuadratureConfig quadrature_config(const Options& o) {
    auto cfg = surface::QuadratureConfig::defaults();
    if (o.tolerance) cfg.tolerance = *o.tolerance;
    if (o.epsilon_ladder) cfg.epsilon_ladder = parse_ladder(*o.epsilon_ladder);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

json config_echo(const surface::QuadratureConfig& cfg) {
    return {{"tolerance", cfg.tolerance},
            {"epsilon_ladder", cfg.epsilon_ladder},
            {"max_subdivisions", cfg.max_subdivisions}};
}

// Graph validation, splitting and build; nullopt with a violation result otherwise.
std::optional<BPolytope> load_bpolytope(const json& doc, Result& r) {
    auto in = io::bpolytope_input_from_json(doc);
    auto gv = validate_graph(in.graph);
    if (!gv.empty()) {
        r = violation({{"stage", "graph"}, {"violations", io::to_json(gv)}});
        return std::nullopt;
    }
    if (in.splitting.X.size() == 0) in.splitting = default_splitting(in.graph);
    auto sv = validate_splitting(in.graph, in.splitting);
    if (!sv.empty()) {
        r = violation({{"stage", "splitting"}, {"violations", message_list(sv, "splitting")}});
        return std::nullopt;
    }
    auto built = build(in.graph, in.splitting, in.halfspaces);
    if (!built.polytope) {
        r = violation({{"stage", "bpolytope"}, {"violations", io::to_json(built.diagnostics)}});
        return std::nullopt;
    }
    return std::move(*built.polytope);
}

const json& model_doc(const json& doc) { return doc.contains("model") ? doc["model"] : doc; }

Result cmd_validate_graph(const json& doc, const Options&) {
    auto g = io::graph_from_json(doc);
    auto v = validate_graph(g);
    json payload = {{"graph", io::to_json(g)}, {"valid", v.empty()}, {"violations", io::to_json(v)}};
    if (!v.empty()) return violation(payload);
    payload["leaves"] = g.leaves();
    payload["vertex_count"] = g.vertex_count();
    json periods = json::array();
    auto x = default_splitting(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        periods.push_back({{"edge", e},
                           {"weight", io::to_json(modular_weight(g, e))},
                           {"period", io::to_json(g.edges[e].period)}});
    payload["splitting"] = io::to_json(x.X);
    payload["edges"] = periods;
    return {Status::Ok, payload, std::nullopt};
}

Result cmd_validate_bpolytope(const json& doc, const Options&) {
    Result r;
    auto p = load_bpolytope(doc, r);
    if (!p) return r;
    json lp = json::array();
    for (std::size_t e = 0; e < p->graph().edge_count(); ++e) {
        auto c = local_product_check(*p, e);
        lp.push_back({{"edge", e}, {"ok", c.ok}, {"epsilon", io::to_json(c.epsilon)}, {"whole_chart", c.whole_chart}});
    }
    return {Status::Ok, {{"valid", true}, {"violations", json::array()}, {"polytope", io::to_json(*p)}, {"local_product", lp}},
            std::nullopt};
}

Result cmd_delzant_check(const json& doc, const Options&) {
    if (doc.contains("graph")) {
        Result r;
        auto p = load_bpolytope(doc, r);
        if (!p) return r;
        auto rep = is_delzant_b(*p);
        json payload = {{"kind", "bpolytope"}, {"report", io::to_json(rep)}};
        return {rep.delzant ? Status::Ok : Status::Violation, payload, std::nullopt};
    }
    auto poly = io::polyhedron_from_json(doc.contains("polyhedron") ? doc["polyhedron"] : doc);
    auto rep = is_delzant(poly);
    json payload = {{"kind", "polytope"}, {"polytope", io::describe(poly)}, {"report", io::to_json(rep)}};
    return {rep.delzant ? Status::Ok : Status::Violation, payload, std::nullopt};
}

Result cmd_classify(const json& doc, const Options&) {
    if (doc.contains("invariants")) {
        auto inv = io::surface_invariants_from_json(doc["invariants"]);
        auto d = classify_surface(inv);
        return {Status::Ok, {{"kind", "surface"}, {"invariants", io::to_json(inv)}, {"descriptor", io::to_json(d)}},
                std::nullopt};
    }
    Result r;
    auto p = load_bpolytope(doc, r);
    if (!p) return r;
    auto rep = is_delzant_b(*p);
    if (!rep.delzant) return violation({{"stage", "delzant"}, {"report", io::to_json(rep)}});
    auto d = realize(*p);
    json payload = {{"kind", "bpolytope"}, {"descriptor", io::to_json(d)}};
    if (p->graph().n == 2) payload["diffeotype"] = io::to_json(diffeotype_4d(*p));
    return {Status::Ok, payload, std::nullopt};
}

Result cmd_cut(const json& doc, const Options&) {
    Result r;
    auto p = load_bpolytope(doc, r);
    if (!p) return r;
    if (!doc.contains("cut")) throw io::ParseError("cut: missing field \"cut\"");
    auto h = io::halfspace_from_json(doc["cut"], p->graph().n);
    try {
        auto q = symplectic_cut(*p, h);
        json payload = {{"polytope", io::to_json(q)}};
        if (q.graph().n == 2) payload["diffeotype"] = io::to_json(diffeotype_4d(q));
        return {Status::Ok, payload, std::nullopt};
    } catch (const CutError& e) {
        BDelzantReport rep{false, e.failures};
        return violation({{"stage", "cut"}, {"message", e.what()}, {"report", io::to_json(rep)}});
    }
}

Result cmd_fiber(const json& doc, const Options&) {
    Result r;
    auto p = load_bpolytope(doc, r);
    if (!p) return r;
    if (!doc.contains("xbar")) throw io::ParseError("fiber: missing field \"xbar\"");
    auto xbar = io::vector_from_json(doc["xbar"], "xbar", p->graph().n - 1);
    auto f = fiber_over(*p, xbar);
    return {Status::Ok, {{"xbar", io::to_json(xbar)}, {"fiber", io::to_json(f)}}, std::nullopt};
}

Result cmd_volume(const json& doc, const Options& o) {
    auto cfg = quadrature_config(o);
    auto m = io::surface_model_from_json(model_doc(doc));
    surface::validate_model(m);
    auto v = surface::liouville_volume(m, cfg);
    json payload = {{"model", io::to_json(m)},
                    {"value", v.value},
                    {"error_estimate", v.error_estimate},
                    {"converged", v.converged},
                    {"note", v.note},
                    {"config", config_echo(cfg)}};
    return {v.converged ? Status::Ok : Status::Violation, payload, std::nullopt};
}

Result cmd_period(const json& doc, const Options& o) {
    auto cfg = quadrature_config(o);
    auto m = io::surface_model_from_json(model_doc(doc));
    surface::validate_model(m);
    json periods = json::array();
    for (double z : m.z_set()) {
        auto p = surface::modular_period(m, z, cfg);
        periods.push_back(
            {{"z", z}, {"loop_integral", p.loop_integral}, {"hamiltonian", p.hamiltonian}, {"residue", p.residue}});
    }
    return {Status::Ok, {{"model", io::to_json(m)}, {"periods", periods}, {"config", config_echo(cfg)}}, std::nullopt};
}

Result cmd_verify_moment(const json& doc, const Options& o) {
    auto in = io::moment_input_from_json(doc);
    for (const auto& f : in.model.factors) surface::validate_model(f, false);
    double threshold = o.tolerance ? *o.tolerance : 1e-8;
    auto c = surface::verify_moment_map(in.model, in.moment, in.density, in.collar);
    json payload = {{"max_residual", c.max_residual},
                    {"points", c.points},
                    {"excluded", c.excluded},
                    {"density", in.density},
                    {"collar", in.collar},
                    {"threshold", threshold},
                    {"satisfied", c.max_residual < threshold}};
    return {c.max_residual < threshold ? Status::Ok : Status::Violation, payload, std::nullopt};
}

Result cmd_render(const json& doc, const Options&) {
    std::string svg;
    if (doc.contains("halfspaces")) {
        Result r;
        auto p = load_bpolytope(doc, r);
        if (!p) return r;
        svg = render_svg(*p);
    } else {
        auto g = io::graph_from_json(doc.contains("graph") ? doc["graph"] : doc);
        auto gv = validate_graph(g);
        if (!gv.empty()) return violation({{"stage", "graph"}, {"violations", io::to_json(gv)}});
        svg = render_svg(g, default_splitting(g));
    }
    return {Status::Ok, {{"svg_bytes", svg.size()}, {"svg_sha256", sha256_hex(svg)}, {"svg", svg}}, svg};
}

using Handler = std::function<Result(const json&, const Options&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"validate-graph", cmd_validate_graph}, {"validate-bpolytope", cmd_validate_bpolytope},
        {"delzant-check", cmd_delzant_check},   {"classify", cmd_classify},
        {"cut", cmd_cut},                       {"fiber", cmd_fiber},
        {"volume", cmd_volume},                 {"period", cmd_period},
        {"verify-moment", cmd_verify_moment},   {"render", cmd_render},
    };
    return h;
}

std::string report(const Options& o, std::string_view input, Status s, const json& payload) {
    json rep = {{"schema_version", kSchemaVersion},
                {"tool", kToolName},
                {"tool_version", kToolVersion},
                {"command", o.command},
                {"status", status_name(s)},
                {"input_digest", "sha256:" + sha256_hex(input)},
                {"payload", payload}};
    return rep.dump(2) + "\n";
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : handlers()) v.push_back(k);
        return v;
    }();
    return names;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

Outcome failure(const Options& opts, std::string_view input, const std::string& message) {
    return {1, report(opts, input, Status::Error, {{"error", message}})};
}

Outcome run(const Options& opts, std::string_view input) {
    auto it = handlers().find(opts.command);
    if (it == handlers().end()) return failure(opts, input, "unknown command \"" + opts.command + "\"");
    if (opts.schema_version != kSchemaVersion && opts.schema_version != "1")
        return failure(opts, input, "unsupported schema version \"" + opts.schema_version + "\"; supported: " + kSchemaVersion);
    if (opts.format != "json" && opts.format != "svg") return failure(opts, input, "--format must be json or svg");
    if (opts.format == "svg" && opts.command != "render") return failure(opts, input, "--format svg is only valid for render");

    Result r;
    try {
        json doc = json::parse(input.begin(), input.end());
        r = it->second(doc, opts);
    } catch (const json::exception& e) {
        r = {Status::Error, {{"error", std::string("malformed JSON: ") + e.what()}}, std::nullopt};
    } catch (const io::ParseError& e) {
        r = {Status::Error, {{"error", e.what()}}, std::nullopt};
    } catch (const UsageError& e) {
        r = {Status::Error, {{"error", e.what()}}, std::nullopt};
    } catch (const DomainError& e) {
        r = violation({{"stage", "domain"}, {"message", e.what()}});
    } catch (const std::exception& e) {
        r = {Status::Error, {{"error", std::string("internal error: ") + e.what()}}, std::nullopt};
    }
    if (opts.format == "svg" && r.status == Status::Ok && r.svg) return {0, *r.svg};
    return {exit_code(r.status), report(opts, input, r.status, r.payload)};
}

}  // namespace btoric::cli
