#include "btoric/svg.hpp"

#include "btoric/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace btoric {

namespace {

constexpr double kUnit = 160.0;    // pixels between consecutive exceptional lines
constexpr double kMargin = 48.0;
constexpr double kHeight = 240.0;  // plot height for n = 2
constexpr int kDepth = 12;         // copies are clipped where |log s| reaches this
constexpr int kSamples = 24;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Layout {
    const WeightedGraph& g;
    const RationalCovector& x;
    std::size_t columns;

    explicit Layout(const WeightedGraph& graph, const RationalCovector& split)
        : g(graph), x(split), columns(g.shape == GraphShape::Line ? g.edge_count() + 1 : g.edge_count()) {}

    // Column position of the exceptional line of edge e (cycle: the last edge sits at 0 and at N).
    double z_position(std::size_t e) const { return static_cast<double>(e + 1); }

    std::optional<std::size_t> left_edge(std::size_t v) const {
        if (v > 0) return v - 1;
        if (g.shape == GraphShape::Cycle) return g.edge_count() - 1;
        return std::nullopt;
    }
    std::optional<std::size_t> right_edge(std::size_t v) const {
        if (v < g.edge_count()) return v;
        return std::nullopt;
    }
    double left_position(std::size_t v) const { return static_cast<double>(v); }
    double right_position(std::size_t v) const { return static_cast<double>(v + 1); }

    double wx(std::size_t e) const { return pair(modular_weight(g, e), x).get_d(); }

    // log of the chart magnitude at edge e for a point at level t = <xi, X>.
    double log_s(std::size_t e, double t) const { return std::clamp(t / wx(e), -700.0, 700.0); }

    double column(std::size_t v, double t) const {
        auto l = left_edge(v);
        auto r = right_edge(v);
        if (l && r) {
            double a = log_s(*l, t), b = log_s(*r, t);
            return left_position(v) + 1.0 / (1.0 + std::exp(-(a - b) / 2.0));
        }
        if (r) {
            double s = std::exp(log_s(*r, t));
            return right_position(v) - s / (1.0 + s);
        }
        double s = std::exp(log_s(*l, t));
        return left_position(v) + s / (1.0 + s);
    }

    double px(double col) const { return kMargin + col * kUnit; }
    double width() const { return 2 * kMargin + static_cast<double>(columns) * kUnit; }

    // Level bounds <xi, X> in [lo, hi] that keep copy v away from its exceptional ends.
    std::vector<HalfPlane> clip(std::size_t v) const {
        std::vector<HalfPlane> hs;
        for (auto e : {left_edge(v), right_edge(v)}) {
            if (!e) continue;
            Rational w = pair(modular_weight(g, *e), x);
            // Approaching Z_e means t / w -> -inf; stop at t / w = -kDepth.
            if (sgn(w) > 0) hs.push_back({-x, kDepth * w});
            else hs.push_back({x, -kDepth * w});
        }
        return hs;
    }
};

std::string exact_comment(const io::json& data) {
    std::string s = data.dump();
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += s[i];
        if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '-') out += ' ';
    }
    return "<!-- btoric exact data: " + out + " -->\n";
}

void header(std::ostringstream& os, double w, double h) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 "
       << fmt(w) << " " << fmt(h) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\" fill=\"white\"/>\n";
}

std::string weight_label(const WeightedGraph& g, std::size_t e) {
    return std::string(g.edges[e].sign > 0 ? "+" : "-") + to_string(g.edges[e].period) + "u";
}

// The last edge of a cycle is drawn at both ends of the picture.
std::vector<double> z_columns(const Layout& L, std::size_t e) {
    if (L.g.shape == GraphShape::Cycle && e + 1 == L.g.edge_count()) return {0.0, L.z_position(e)};
    return {L.z_position(e)};
}

void draw_z_lines(std::ostringstream& os, const Layout& L, double top, double bottom, bool line_style) {
    const auto& g = L.g;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        for (double c : z_columns(L, e)) {
            double xp = L.px(c);
            if (line_style)
                os << "<line x1=\"" << fmt(xp) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(xp) << "\" y2=\"" << fmt(bottom)
                   << "\" stroke=\"#b00\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
            double ydot = line_style ? top - 8 : (top + bottom) / 2;
            os << "<circle cx=\"" << fmt(xp) << "\" cy=\"" << fmt(ydot) << "\" r=\"4\" fill=\"#d00\"/>\n";
            os << "<text x=\"" << fmt(xp) << "\" y=\"" << fmt(ydot - 10) << "\" font-size=\"11\" text-anchor=\"middle\">e"
               << e << " w=" << weight_label(g, e) << " c=" << to_string(g.edges[e].period) << "</text>\n";
        }
    }
}

void draw_vertex_labels(std::ostringstream& os, const Layout& L, double y) {
    for (std::size_t v = 0; v < L.g.vertex_count(); ++v) {
        double c = static_cast<double>(v) + 0.5;
        os << "<text x=\"" << fmt(L.px(c)) << "\" y=\"" << fmt(y) << "\" font-size=\"11\" text-anchor=\"middle\">v" << v
           << "</text>\n";
    }
}

double zigzag(std::size_t v, double col) {
    double frac = col - std::floor(col);
    if (col >= static_cast<double>(v + 1)) frac = 1.0;
    if (col <= static_cast<double>(v)) frac = 0.0;
    double amp = (v % 2 == 0) ? 40.0 : -40.0;
    return amp * std::sin(M_PI * frac);
}

// Polyline of copy v over the level range [t0, t1] on the one-dimensional zig-zag.
std::string zigzag_path(const Layout& L, std::size_t v, double t0, double t1, double mid) {
    std::ostringstream os;
    for (int i = 0; i <= 4 * kSamples; ++i) {
        double t = t0 + (t1 - t0) * i / (4.0 * kSamples);
        double c = L.column(v, t);
        os << (i == 0 ? "M" : " L") << fmt(L.px(c)) << " " << fmt(mid - zigzag(v, c));
    }
    return os.str();
}

std::pair<double, double> level_range(const Layout& L, std::size_t v) {
    // Far enough that the chart magnitudes saturate the picture.
    double lo = -1e3, hi = 1e3;
    for (auto e : {L.left_edge(v), L.right_edge(v)}) {
        if (!e) continue;
        double lim = -kDepth * L.wx(*e);
        if (lim < 0) lo = lim;
        else hi = lim;
    }
    if (!L.left_edge(v) || !L.right_edge(v)) {
        // Leaf: the free end runs kDepth the other way.
        if (lo == -1e3) lo = -hi;
        if (hi == 1e3) hi = -lo;
    }
    return {lo, hi};
}

struct Point2 {
    double t;
    double y;
};

std::vector<Point2> convex_order(std::vector<Point2> pts) {
    double ct = 0, cy = 0;
    for (const auto& p : pts) ct += p.t, cy += p.y;
    ct /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
        return std::atan2(a.y - cy, a.t - ct) < std::atan2(b.y - cy, b.t - ct);
    });
    return pts;
}

std::string render_line_picture(const WeightedGraph& g, const RationalCovector& x, const BPolytope* p, const io::json& data) {
    Layout L(g, x);
    std::ostringstream os;
    double h = 200.0, mid = 100.0;
    header(os, L.width(), h);
    os << exact_comment(data);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto [lo, hi] = level_range(L, v);
        os << "<path d=\"" << zigzag_path(L, v, lo, hi, mid) << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        if (!p) continue;
        const Polyhedron& c = p->copy(v);
        double a = lo, b = hi;
        for (const auto& hp : c.constraints()) {
            if (hp.normal.is_zero()) continue;
            double bound = Rational(hp.bound / hp.normal[0] * x[0]).get_d();
            if (sgn(hp.normal[0] * x[0]) > 0) b = std::min(b, bound);
            else a = std::max(a, bound);
        }
        if (a < b)
            os << "<path d=\"" << zigzag_path(L, v, a, b, mid)
               << "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"4\" stroke-linecap=\"round\"/>\n";
    }
    draw_z_lines(os, L, mid - 20, mid + 20, false);
    draw_vertex_labels(os, L, h - 12);
    os << "</svg>\n";
    return os.str();
}

std::string render_plane_picture(const WeightedGraph& g, const RationalCovector& x, const BPolytope* p, const io::json& data) {
    Layout L(g, x);
    const LineQuotient q(g.u);
    // Vertical range from Delta_Z and every copy vertex (or [-1, 1] for a bare codomain).
    double ymin = -1, ymax = 1;
    std::vector<std::vector<Point2>> shapes(g.vertex_count());
    if (p) {
        ymin = 1e300, ymax = -1e300;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            std::vector<HalfPlane> hs = p->copy(v).constraints();
            auto extra = L.clip(v);
            hs.insert(hs.end(), extra.begin(), extra.end());
            Polyhedron clipped(g.n, hs);
            if (is_empty(clipped)) continue;
            for (const auto& vert : vertices(clipped)) {
                Point2 pt{pair(vert, x).get_d(), q.project(vert)[0].get_d()};
                shapes[v].push_back(pt);
                ymin = std::min(ymin, pt.y);
                ymax = std::max(ymax, pt.y);
            }
            shapes[v] = convex_order(shapes[v]);
        }
        if (ymin > ymax) ymin = -1, ymax = 1;
        if (ymax - ymin < 1e-9) ymin -= 1, ymax += 1;
    }
    double pad = 0.1 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    double top = kMargin + 20, h = kHeight + top + kMargin;
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * kHeight; };

    std::ostringstream os;
    header(os, L.width(), h);
    os << exact_comment(data);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        double x0 = L.px(static_cast<double>(v)), x1 = L.px(static_cast<double>(v + 1));
        os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(x1 - x0) << "\" height=\""
           << fmt(kHeight) << "\" fill=\"" << (v % 2 == 0 ? "#f4f4f4" : "#ebebeb") << "\"/>\n";
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const auto& pts = shapes[v];
        if (pts.size() < 2) continue;
        std::ostringstream d;
        bool first = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point2& a = pts[i];
            const Point2& b = pts[(i + 1) % pts.size()];
            for (int k = 0; k < kSamples; ++k) {
                double f = static_cast<double>(k) / kSamples;
                double t = a.t + (b.t - a.t) * f, y = a.y + (b.y - a.y) * f;
                d << (first ? "M" : " L") << fmt(L.px(L.column(v, t))) << " " << fmt(py(y));
                first = false;
            }
        }
        d << " Z";
        os << "<path d=\"" << d.str() << "\" fill=\"#1f5fbf\" fill-opacity=\"0.45\" stroke=\"#1f5fbf\" stroke-width=\"1.5\"/>\n";
    }
    draw_z_lines(os, L, top, top + kHeight, true);
    if (p && !is_empty(p->extremal())) {
        auto vs = vertices(p->extremal());
        for (std::size_t e = 0; !vs.empty() && e < g.edge_count(); ++e)
            for (double c : z_columns(L, e)) {
                double xp = L.px(c);
                os << "<line x1=\"" << fmt(xp) << "\" y1=\"" << fmt(py(vs.front()[0].get_d())) << "\" x2=\"" << fmt(xp)
                   << "\" y2=\"" << fmt(py(vs.back()[0].get_d())) << "\" stroke=\"#0a2a6a\" stroke-width=\"4\"/>\n";
            }
    }
    draw_vertex_labels(os, L, h - 12);
    os << "</svg>\n";
    return os.str();
}

void require_renderable(const WeightedGraph& g) {
    if (g.n > 2) throw DomainError("render: only dimensions n <= 2 can be drawn, got n = " + std::to_string(g.n));
    auto bad = validate_graph(g);
    if (!bad.empty()) throw DomainError("render: invalid graph: " + bad.front().message);
}

}  // namespace

std::string render_svg(const WeightedGraph& g, const SplittingChoice& x) {
    require_renderable(g);
    io::json data = {{"graph", io::to_json(g)}, {"splitting", io::to_json(x.X)}};
    if (g.n == 1) return render_line_picture(g, x.X, nullptr, data);
    return render_plane_picture(g, x.X, nullptr, data);
}

std::string render_svg(const BPolytope& p) {
    require_renderable(p.graph());
    io::json hs = io::json::array();
    for (const auto& h : p.halfspaces()) hs.push_back(io::to_json(h));
    io::json data = {{"graph", io::to_json(p.graph())}, {"splitting", io::to_json(p.splitting().X)}, {"halfspaces", hs}};
    if (p.graph().n == 1) return render_line_picture(p.graph(), p.splitting().X, &p, data);
    return render_plane_picture(p.graph(), p.splitting().X, &p, data);
}

}  // namespace btoric
