#include "btoric/polytope.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace btoric {

namespace {

bool has_zero_normal(const HalfPlane& h) { return h.normal.is_zero(); }

std::vector<const HalfPlane*> proper_constraints(const Polyhedron& p) {
    std::vector<const HalfPlane*> out;
    for (const auto& h : p.constraints())
        if (!has_zero_normal(h)) out.push_back(&h);
    return out;
}

bool trivially_infeasible(const Polyhedron& p) {
    for (const auto& h : p.constraints())
        if (has_zero_normal(h) && sgn(h.bound) < 0) return true;
    return false;
}

void for_each_combination(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > m) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void sort_unique(std::vector<RationalVector>& pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Feasible points where dim - |equalities| constraints are tight together with
// <x, l> = 0 for every l in `equalities`, and the system has full rank.
std::vector<RationalVector> basic_feasible_points(const Polyhedron& p, const std::vector<RationalVector>& equalities) {
    const std::size_t n = p.dim();
    std::vector<RationalVector> out;
    if (trivially_infeasible(p) || equalities.size() > n) return out;
    const auto rows = proper_constraints(p);
    const std::size_t k = n - equalities.size();
    for_each_combination(rows.size(), k, [&](const std::vector<std::size_t>& idx) {
        RationalMatrix a(n, n);
        RationalVector b(n);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < n; ++c) a(r, c) = rows[idx[r]]->normal[c];
            b[r] = rows[idx[r]]->bound;
        }
        for (std::size_t e = 0; e < equalities.size(); ++e)
            for (std::size_t c = 0; c < n; ++c) a(k + e, c) = equalities[e][c];
        auto x = solve_square(a, b);
        if (x && contains(p, *x)) out.push_back(std::move(*x));
    });
    sort_unique(out);
    return out;
}

RationalMatrix normal_matrix(const std::vector<const HalfPlane*>& rows, std::size_t n) {
    RationalMatrix a(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = rows[r]->normal[c];
    return a;
}

// Generators of {v : <a, v> <= 0 for all proper constraints}.
Cone homogeneous_cone(const Polyhedron& p) {
    const std::size_t n = p.dim();
    const auto rows = proper_constraints(p);
    const auto lines = nullspace(normal_matrix(rows, n));
    Cone cone;
    for (const auto& l : lines) {
        cone.generators.push_back(l);
        cone.generators.push_back(-l);
    }
    const std::size_t pointed_dim = n - lines.size();
    if (pointed_dim == 0) {
        sort_unique(cone.generators);
        return cone;
    }
    std::vector<RationalVector> rays;
    for_each_combination(rows.size(), pointed_dim - 1, [&](const std::vector<std::size_t>& idx) {
        RationalMatrix a(idx.size() + lines.size(), n);
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < n; ++c) a(r, c) = rows[idx[r]]->normal[c];
        for (std::size_t e = 0; e < lines.size(); ++e)
            for (std::size_t c = 0; c < n; ++c) a(idx.size() + e, c) = lines[e][c];
        auto ns = nullspace(a);
        if (ns.size() != 1) return;
        for (const auto& cand : {ns[0], RationalVector(-ns[0])}) {
            bool ok = true;
            for (const auto* h : rows)
                if (sgn(pair(cand, h->normal)) > 0) {
                    ok = false;
                    break;
                }
            if (ok) rays.push_back(cand);
        }
    });
    sort_unique(rays);
    cone.generators.insert(cone.generators.end(), rays.begin(), rays.end());
    sort_unique(cone.generators);
    return cone;
}

}  // namespace

HalfPlane normalized(const HalfPlane& h) {
    if (h.normal.is_zero()) return HalfPlane{h.normal, sgn(h.bound) < 0 ? Rational(-1) : Rational(0)};
    RationalCovector prim = primitive_part(h.normal);
    // prim = normal * scale for some positive rational scale
    std::size_t i = 0;
    while (sgn(h.normal[i]) == 0) ++i;
    Rational scale = prim[i] / h.normal[i];
    return HalfPlane{std::move(prim), h.bound * scale};
}

bool satisfies(const HalfPlane& h, const RationalVector& x) { return pair(x, h.normal) <= h.bound; }
bool is_tight(const HalfPlane& h, const RationalVector& x) {
    return !h.normal.is_zero() && pair(x, h.normal) == h.bound;
}

Polyhedron::Polyhedron(std::size_t dim, std::vector<HalfPlane> constraints)
    : dim_(dim), constraints_(std::move(constraints)) {
    for (auto& h : constraints_) {
        if (h.normal.size() != dim_) throw DomainError("constraint dimension does not match polyhedron dimension");
        for (auto& c : h.normal.coords) c.canonicalize();
        h.bound.canonicalize();
    }
}

Polyhedron Polyhedron::empty(std::size_t dim) { return Polyhedron(dim, {HalfPlane{RationalCovector(dim), -1}}); }

Polyhedron Polyhedron::box(const std::vector<std::pair<Rational, Rational>>& bounds) {
    const std::size_t n = bounds.size();
    std::vector<HalfPlane> hs;
    for (std::size_t i = 0; i < n; ++i) {
        RationalCovector up(n), down(n);
        up[i] = 1;
        down[i] = -1;
        hs.push_back({up, bounds[i].second});
        hs.push_back({down, -bounds[i].first});
    }
    return Polyhedron(n, std::move(hs));
}

bool contains(const Polyhedron& p, const RationalVector& x) {
    if (x.size() != p.dim()) throw DomainError("contains: point dimension mismatch");
    for (const auto& h : p.constraints())
        if (!satisfies(h, x)) return false;
    return true;
}

std::vector<RationalVector> lineality_space(const Polyhedron& p) {
    return nullspace(normal_matrix(proper_constraints(p), p.dim()));
}

bool is_empty(const Polyhedron& p) {
    if (trivially_infeasible(p)) return true;
    return basic_feasible_points(p, lineality_space(p)).empty();
}

bool is_bounded(const Polyhedron& p) { return homogeneous_cone(p).trivial(); }

std::vector<RationalVector> vertices(const Polyhedron& p) {
    if (is_empty(p)) throw EmptyPolyhedronError("vertices: empty polyhedron");
    if (!lineality_space(p).empty()) return {};
    return basic_feasible_points(p, {});
}

Cone recession_cone(const Polyhedron& p) {
    if (is_empty(p)) throw EmptyPolyhedronError("recession_cone: empty polyhedron");
    return homogeneous_cone(p);
}

bool implies(const Polyhedron& p, const HalfPlane& h) {
    if (h.normal.size() != p.dim()) throw DomainError("implies: dimension mismatch");
    if (is_empty(p)) return true;
    if (h.normal.is_zero()) return sgn(h.bound) >= 0;
    for (const auto& r : homogeneous_cone(p).generators)
        if (sgn(pair(r, h.normal)) > 0) return false;
    for (const auto& x : basic_feasible_points(p, lineality_space(p)))
        if (!satisfies(h, x)) return false;
    return true;
}

Polyhedron prune_redundant(const Polyhedron& p) {
    if (is_empty(p)) return p;
    std::vector<HalfPlane> cs;
    for (const auto& h : p.constraints())
        if (!has_zero_normal(h)) cs.push_back(normalized(h));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (std::size_t i = 0; i < cs.size();) {
        std::vector<HalfPlane> rest;
        rest.reserve(cs.size() - 1);
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (j != i) rest.push_back(cs[j]);
        if (implies(Polyhedron(p.dim(), rest), cs[i]))
            cs = std::move(rest);
        else
            ++i;
    }
    return Polyhedron(p.dim(), std::move(cs));
}

Polyhedron intersect_halfplane(const Polyhedron& p, const HalfPlane& h) {
    auto cs = p.constraints();
    cs.push_back(normalized(h));
    Polyhedron q(p.dim(), std::move(cs));
    if (is_empty(q)) return q;
    return prune_redundant(q);
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw DomainError("intersect: dimension mismatch");
    auto cs = p.constraints();
    cs.insert(cs.end(), q.constraints().begin(), q.constraints().end());
    Polyhedron r(p.dim(), std::move(cs));
    if (is_empty(r)) return r;
    return prune_redundant(r);
}

Polyhedron project_out(const Polyhedron& p, const RationalVector& direction) {
    if (direction.size() != p.dim()) throw DomainError("project_out: direction dimension mismatch");
    if (direction.is_zero()) throw DomainError("project_out: direction must be nonzero");
    const LineQuotient quotient(direction);
    const std::size_t m = p.dim() - 1;

    struct Split {
        Rational along;
        HalfPlane rest;
    };
    std::vector<Split> pos, neg;
    std::vector<HalfPlane> out;
    for (const auto& h : p.constraints()) {
        Split s{pair(quotient.direction(), h.normal), HalfPlane{quotient.quotient_part(h.normal), h.bound}};
        int sign = sgn(s.along);
        if (sign > 0)
            pos.push_back(std::move(s));
        else if (sign < 0)
            neg.push_back(std::move(s));
        else
            out.push_back(std::move(s.rest));
    }
    for (const auto& a : pos) {
        for (const auto& b : neg) {
            // (-b.along) * a + a.along * b cancels the direction component.
            Rational wa = -b.along, wb = a.along;
            RationalCovector normal = wa * a.rest.normal + wb * b.rest.normal;
            out.push_back(HalfPlane{std::move(normal), wa * a.rest.bound + wb * b.rest.bound});
        }
    }
    for (auto& h : out) h = normalized(h);
    Polyhedron q(m, std::move(out));
    if (is_empty(q)) return Polyhedron::empty(m);
    return prune_redundant(q);
}

bool same_polyhedron(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) return false;
    const bool ep = is_empty(p), eq = is_empty(q);
    if (ep || eq) return ep == eq;
    if (is_bounded(p) && is_bounded(q)) return vertices(p) == vertices(q);
    for (const auto& h : q.constraints())
        if (!implies(p, h)) return false;
    for (const auto& h : p.constraints())
        if (!implies(q, h)) return false;
    return true;
}

int affine_dimension(const Polyhedron& p) {
    if (is_empty(p)) return -1;
    std::vector<const HalfPlane*> equalities;
    for (const auto& h : p.constraints()) {
        if (has_zero_normal(h)) continue;
        if (implies(p, HalfPlane{-h.normal, -h.bound})) equalities.push_back(&h);
    }
    return static_cast<int>(p.dim()) - static_cast<int>(rank(normal_matrix(equalities, p.dim())));
}

Polyhedron translate(const Polyhedron& p, const RationalVector& t) {
    std::vector<HalfPlane> cs;
    for (const auto& h : p.constraints()) cs.push_back(HalfPlane{h.normal, h.bound + pair(t, h.normal)});
    return Polyhedron(p.dim(), std::move(cs));
}

Polyhedron affine_image(const Polyhedron& p, const RationalMatrix& u, const RationalVector& t) {
    const std::size_t n = p.dim();
    RationalMatrix ut(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) ut(r, c) = u(c, r);
    std::vector<HalfPlane> cs;
    for (const auto& h : p.constraints()) {
        if (has_zero_normal(h)) {
            cs.push_back(h);
            continue;
        }
        auto a = solve_square(ut, transpose(h.normal));
        if (!a) throw DomainError("affine_image: singular linear part");
        RationalCovector normal = transpose(*a);
        Rational bound = h.bound + pair(t, normal);
        cs.push_back(HalfPlane{std::move(normal), std::move(bound)});
    }
    return Polyhedron(n, std::move(cs));
}

std::vector<RationalVector> edge_directions(const Polyhedron& irredundant, const RationalVector& vertex) {
    const std::size_t n = irredundant.dim();
    std::vector<const HalfPlane*> tight;
    for (const auto& h : irredundant.constraints())
        if (is_tight(h, vertex)) tight.push_back(&h);
    if (tight.size() != n) throw DomainError("edge_directions: vertex is not simple");
    RationalMatrix a = normal_matrix(tight, n);
    std::vector<RationalVector> dirs;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector rhs(n);
        rhs[i] = -1;
        auto d = solve_square(a, rhs);
        if (!d) throw DomainError("edge_directions: tight normals are dependent");
        dirs.push_back(primitive_part(*d));
    }
    return dirs;
}

std::optional<std::string> vertex_cone_failure(const Polyhedron& irredundant, const RationalVector& vertex) {
    const std::size_t n = irredundant.dim();
    std::size_t tight = 0;
    for (const auto& h : irredundant.constraints())
        if (is_tight(h, vertex)) ++tight;
    if (tight > n) return "non-simple vertex: " + std::to_string(tight) + " facets meet";
    if (tight < n) return std::string("not a vertex");
    auto dirs = edge_directions(irredundant, vertex);
    BigInt det = lattice_determinant(dirs);
    if (det != 1 && det != -1)
        return "edge directions do not form a lattice basis (det = " + det.get_str() + ")";
    return std::nullopt;
}

DelzantReport is_delzant(const Polyhedron& p) {
    if (is_empty(p)) throw EmptyPolyhedronError("is_delzant: empty polyhedron");
    if (!is_bounded(p)) throw DomainError("is_delzant: unbounded polyhedron");
    Polyhedron q = prune_redundant(p);
    if (affine_dimension(q) != static_cast<int>(q.dim())) throw DomainError("is_delzant: polytope is not full-dimensional");
    DelzantReport report;
    for (const auto& v : vertices(q)) {
        if (auto why = vertex_cone_failure(q, v)) {
            report.delzant = false;
            report.failures.push_back({v, *why});
        }
    }
    return report;
}

}  // namespace btoric
