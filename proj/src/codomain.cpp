#include "btoric/codomain.hpp"

#include <cmath>

namespace btoric {

std::size_t WeightedGraph::vertex_count() const {
    return shape == GraphShape::Line ? edges.size() + 1 : edges.size();
}

std::pair<std::size_t, std::size_t> WeightedGraph::endpoints(std::size_t e) const {
    if (e >= edges.size()) throw DomainError("edge id " + std::to_string(e) + " out of range");
    std::size_t second = e + 1;
    if (shape == GraphShape::Cycle) second %= edges.size();
    return {e, second};
}

std::vector<std::size_t> WeightedGraph::incident_edges(std::size_t v) const {
    if (v >= vertex_count()) throw DomainError("vertex id " + std::to_string(v) + " out of range");
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = endpoints(e);
        if (a == v || b == v) out.push_back(e);
    }
    return out;
}

bool WeightedGraph::is_leaf(std::size_t v) const {
    return shape == GraphShape::Line && (v == 0 || v == edges.size());
}

std::vector<std::size_t> WeightedGraph::leaves() const {
    if (shape != GraphShape::Line) return {};
    return {0, edges.size()};
}

std::vector<GraphViolation> validate_graph(const WeightedGraph& g) {
    std::vector<GraphViolation> out;
    if (g.n == 0) out.push_back({"dimension", "ambient dimension must be positive", {}, {}});
    if (g.u.size() != g.n)
        out.push_back({"dimension", "u has " + std::to_string(g.u.size()) + " coordinates, expected " + std::to_string(g.n), {}, {}});
    if (g.u.is_zero())
        out.push_back({"zero_weight_direction", "u must be nonzero", {}, {}});
    else if (!g.u.is_integral() || primitive_part(g.u) != g.u)
        out.push_back({"u_not_primitive", "u = " + to_string(g.u) + " is not a primitive integer vector", {}, {}});
    if (g.edges.empty()) {
        out.push_back({"no_edges", "graph has no edges", {}, {}});
        return out;
    }
    const std::size_t m = g.edges.size();
    if (g.shape == GraphShape::Cycle && m % 2 != 0)
        out.push_back({"odd_cycle", "cycle of odd length " + std::to_string(m), {}, {}});
    for (std::size_t e = 0; e < m; ++e) {
        const auto& d = g.edges[e];
        if (d.sign != 1 && d.sign != -1)
            out.push_back({"bad_sign", "edge " + std::to_string(e) + " has sign " + std::to_string(d.sign), e, {}});
        if (sgn(d.period) <= 0)
            out.push_back({"nonpositive_period", "edge " + std::to_string(e) + " has period " + to_string(d.period), e, {}});
    }
    std::size_t adjacent_pairs = g.shape == GraphShape::Cycle ? m : m - 1;
    if (g.shape == GraphShape::Cycle && m < 2) adjacent_pairs = 0;
    for (std::size_t i = 0; i < adjacent_pairs; ++i) {
        std::size_t j = (i + 1) % m;
        if (g.edges[i].sign == g.edges[j].sign)
            out.push_back({"sign_not_alternating",
                           "edges " + std::to_string(i) + " and " + std::to_string(j) + " meet at vertex " +
                               std::to_string(j) + " with equal signs",
                           i, j});
    }
    return out;
}

std::vector<std::string> validate_splitting(const WeightedGraph& g, const SplittingChoice& x) {
    std::vector<std::string> out;
    if (x.X.size() != g.n) {
        out.push_back("splitting has " + std::to_string(x.X.size()) + " coordinates, expected " + std::to_string(g.n));
        return out;
    }
    if (!x.X.is_integral()) out.push_back("splitting X = " + to_string(x.X) + " is not integral");
    if (g.u.size() == g.n && pair(g.u, x.X) != 1)
        out.push_back("splitting must satisfy <u, X> = 1, got " + to_string(pair(g.u, x.X)));
    return out;
}

SplittingChoice default_splitting(const WeightedGraph& g) { return SplittingChoice{tw_quotient(g).section()}; }

ChartValue chart_eval(const WeightedGraph& g, const SplittingChoice& a, std::size_t e, const CodomainPoint& p) {
    return chart_eval(g, a.X, e, p);
}

ChartValue chart_eval(const WeightedGraph& g, const RationalCovector& a, std::size_t e, const CodomainPoint& p) {
    const auto [first, second] = g.endpoints(e);
    const RationalVector w = modular_weight(g, e);
    const Rational wa = pair(w, a);
    if (sgn(wa) == 0) throw DomainError("chart_eval: covector lies in t_w");
    ChartValue out;
    if (const auto* r = std::get_if<RegularPoint>(&p)) {
        if (r->xi.size() != g.n) throw DomainError("chart_eval: point dimension mismatch");
        if (r->vertex == first)
            out.sign = 1;
        else if (r->vertex == second)
            out.sign = -1;
        else
            throw DomainError("chart_eval: vertex " + std::to_string(r->vertex) + " is not an endpoint of edge " +
                              std::to_string(e));
        out.xbar = project_tw(g, r->xi);
        out.exponent = pair(r->xi, a) / wa;
        out.s = out.sign * std::exp(out.exponent.get_d());
    } else {
        const auto& x = std::get<ExceptionalPoint>(p);
        if (x.edge != e) throw DomainError("chart_eval: exceptional point lies on another edge");
        if (x.xbar.size() + 1 != g.n) throw DomainError("chart_eval: exceptional point dimension mismatch");
        out.xbar = x.xbar;
        out.sign = 0;
        out.exponent = 0;
        out.s = 0.0;
    }
    return out;
}

RationalVector modular_weight(const WeightedGraph& g, std::size_t e) {
    if (e >= g.edges.size()) throw DomainError("edge id " + std::to_string(e) + " out of range");
    return Rational(g.edges[e].sign) * g.edges[e].period * g.u;
}

Rational modular_period(const WeightedGraph& g, std::size_t e, const RationalCovector& x) {
    const Rational ux = pair(g.u, x);
    if (sgn(ux) == 0) throw DomainError("degenerate splitting: X lies in t_w");
    if (!x.is_integral() || abs(ux) != 1) throw DomainError("X is not a lattice generator of t / t_w");
    return abs(pair(modular_weight(g, e), x));
}

LineQuotient tw_quotient(const WeightedGraph& g) { return LineQuotient(g.u); }

RationalVector project_tw(const WeightedGraph& g, const RationalVector& xi) { return tw_quotient(g).project(xi); }

}  // namespace btoric
