#pragma once

// Brute-force reference implementations used only by the tests. They share
// GMP rationals with the library but none of its algorithms: determinants by
// cofactor expansion, vertices by Cramer's rule over every n-subset of
// constraints, Delzant by enumerating edges between vertex pairs.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Row = std::vector<Q>;
using Mat = std::vector<Row>;

struct Constraint {
    Row a;
    Q b;
};

inline Q det(const Mat& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Q total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (sgn(m[0][c]) == 0) continue;
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            Row row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        Q term = m[0][c] * det(minor);
        total += (c % 2 == 0) ? term : Q(-term);
    }
    return total;
}

inline std::optional<Row> cramer(const Mat& a, const Row& b) {
    Q d = det(a);
    if (sgn(d) == 0) return std::nullopt;
    Row x(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Mat ai = a;
        for (std::size_t r = 0; r < a.size(); ++r) ai[r][i] = b[r];
        x[i] = det(ai) / d;
    }
    return x;
}

inline Q dot(const Row& a, const Row& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::size_t rank(Mat m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Q f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline bool feasible(const std::vector<Constraint>& cs, const Row& x) {
    for (const auto& c : cs)
        if (dot(c.a, x) > c.b) return false;
    return true;
}

inline std::vector<Row> vertices(const std::vector<Constraint>& cs, std::size_t n) {
    std::vector<Row> out;
    for_each_subset(cs.size(), n, [&](const std::vector<std::size_t>& idx) {
        Mat a;
        Row b;
        for (auto i : idx) {
            a.push_back(cs[i].a);
            b.push_back(cs[i].b);
        }
        auto x = cramer(a, b);
        if (x && feasible(cs, *x)) out.push_back(*x);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::size_t> tight(const std::vector<Constraint>& cs, const Row& x) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (dot(cs[i].a, x) == cs[i].b) t.push_back(i);
    return t;
}

inline Row primitive(Row v) {
    mpz_class l = 1;
    for (const auto& c : v) l = lcm(l, c.get_den());
    mpz_class g = 0;
    for (auto& c : v) {
        c *= l;
        g = gcd(g, c.get_num());
    }
    for (auto& c : v) c /= g;
    return v;
}

struct DelzantVerdict {
    bool delzant = true;
    std::vector<Row> failing;
};

// Bounded full-dimensional input assumed. A vertex passes iff it has exactly
// n neighbours and the primitive edge vectors have determinant +-1.
inline DelzantVerdict is_delzant(const std::vector<Constraint>& cs, std::size_t n) {
    DelzantVerdict out;
    auto vs = vertices(cs, n);
    std::vector<std::vector<std::size_t>> tights;
    for (const auto& v : vs) tights.push_back(tight(cs, v));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Mat dirs;
        for (std::size_t j = 0; j < vs.size(); ++j) {
            if (i == j) continue;
            std::vector<std::size_t> common;
            std::set_intersection(tights[i].begin(), tights[i].end(), tights[j].begin(), tights[j].end(),
                                  std::back_inserter(common));
            Mat rows;
            for (auto c : common) rows.push_back(cs[c].a);
            if (rank(rows) != n - 1) continue;
            Row d(n);
            for (std::size_t k = 0; k < n; ++k) d[k] = vs[j][k] - vs[i][k];
            dirs.push_back(primitive(d));
        }
        bool ok = dirs.size() == n && abs(det(dirs)) == 1;
        if (!ok) {
            out.delzant = false;
            out.failing.push_back(vs[i]);
        }
    }
    return out;
}

}  // namespace oracle
