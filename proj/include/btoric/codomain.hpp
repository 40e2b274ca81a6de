#pragma once

// Weighted adjacency graphs and the b-moment codomain: copies of t* per
// vertex glued along copies of t_w* per edge.

#include "btoric/lattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace btoric {

enum class GraphShape { Line, Cycle };

struct EdgeData {
    int sign = 1;
    Rational period;

    friend bool operator==(const EdgeData&, const EdgeData&) = default;
};

// Edge e_i joins v_i (first endpoint) and v_{i+1}; on a cycle the last edge
// wraps around to v_0. The weight of e is sign_e * period_e * u.
struct WeightedGraph {
    GraphShape shape = GraphShape::Line;
    std::size_t n = 1;
    RationalVector u;
    std::vector<EdgeData> edges;

    std::size_t edge_count() const { return edges.size(); }
    std::size_t vertex_count() const;
    std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const;
    std::vector<std::size_t> incident_edges(std::size_t v) const;
    bool is_leaf(std::size_t v) const;
    std::vector<std::size_t> leaves() const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

struct GraphViolation {
    std::string code;
    std::string message;
    std::optional<std::size_t> edge;
    std::optional<std::size_t> vertex;
};

std::vector<GraphViolation> validate_graph(const WeightedGraph& g);

// Integer X in t with <u, X> = 1: a lattice generator of t / t_w.
struct SplittingChoice {
    RationalCovector X;

    friend bool operator==(const SplittingChoice&, const SplittingChoice&) = default;
};

std::vector<std::string> validate_splitting(const WeightedGraph& g, const SplittingChoice& x);
// The section of the fixed quotient t* -> t_w*, which pairs to 1 with u.
SplittingChoice default_splitting(const WeightedGraph& g);

struct RegularPoint {
    std::size_t vertex;
    RationalVector xi;
};

struct ExceptionalPoint {
    std::size_t edge;
    RationalVector xbar;
};

using CodomainPoint = std::variant<RegularPoint, ExceptionalPoint>;

// y_{A,e}(p) = ([x], sign * exp(exponent)); s is the float approximation.
struct ChartValue {
    RationalVector xbar;
    int sign = 0;
    Rational exponent;
    double s = 0.0;
};

ChartValue chart_eval(const WeightedGraph& g, const SplittingChoice& a, std::size_t e, const CodomainPoint& p);
// Same chart for any covector A outside t_w.
ChartValue chart_eval(const WeightedGraph& g, const RationalCovector& a, std::size_t e, const CodomainPoint& p);

RationalVector modular_weight(const WeightedGraph& g, std::size_t e);
// <w(e), X> for X oriented to pair positively with w(e); X must generate t / t_w.
Rational modular_period(const WeightedGraph& g, std::size_t e, const RationalCovector& x);

// The fixed quotient t* -> t_w* = t* / R u.
LineQuotient tw_quotient(const WeightedGraph& g);
RationalVector project_tw(const WeightedGraph& g, const RationalVector& xi);

}  // namespace btoric
