#include "btoric/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace btoric {

namespace {

bool is_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
}

template <class Tag>
Coords<Tag> primitive_impl(const Coords<Tag>& v) {
    if (v.is_zero()) throw DomainError("primitive_part: zero vector has no primitive representative");
    BigInt lcm_den = 1;
    for (const auto& c : v.coords) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    BigInt g = 0;
    for (const auto& c : v.coords) {
        BigInt k = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
        ints.push_back(std::move(k));
    }
    Coords<Tag> out(v.size());
    for (std::size_t i = 0; i < ints.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den) || den.front() == '-' || den.front() == '+')
        throw DomainError("not an exact rational \"" + std::string(text) + "\" (expected \"p\" or \"p/q\")");
    BigInt n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw DomainError("zero denominator in \"" + std::string(text) + "\"");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

BigInt floor_of(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_of(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational pair(const RationalVector& xi, const RationalCovector& x) {
    if (xi.size() != x.size()) throw DomainError("pairing of vectors with different dimensions");
    Rational s = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) s += xi[i] * x[i];
    return s;
}

RationalCovector transpose(const RationalVector& v) { return RationalCovector(v.coords); }
RationalVector transpose(const RationalCovector& v) { return RationalVector(v.coords); }

namespace {
template <class Tag>
std::string coords_string(const Coords<Tag>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
    os << ')';
    return os.str();
}
}  // namespace

std::string to_string(const RationalVector& v) { return coords_string(v); }
std::string to_string(const RationalCovector& v) { return coords_string(v); }

BigInt determinant(const IntegerMatrix& input) {
    const std::size_t n = input.rows();
    if (input.cols() != n) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return 1;
    IntegerMatrix m = input;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RationalVector primitive_part(const RationalVector& v) { return primitive_impl(v); }
RationalCovector primitive_part(const RationalCovector& v) { return primitive_impl(v); }

BigInt lattice_determinant(std::span<const RationalVector> vectors) {
    const std::size_t n = vectors.size();
    IntegerMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (vectors[r].size() != n)
            throw DomainError("is_unimodular: expected " + std::to_string(n) + " vectors of dimension " +
                              std::to_string(n));
        if (!vectors[r].is_integral()) throw DomainError("is_unimodular: non-integral vector " + to_string(vectors[r]));
        for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c].get_num();
    }
    return determinant(m);
}

bool is_unimodular(std::span<const RationalVector> vectors) {
    BigInt d = lattice_determinant(vectors);
    return d == 1 || d == -1;
}

std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("solve_square: dimension mismatch");
    RationalMatrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(aug(pivot, col)) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t c = 0; c <= n; ++c) std::swap(aug(pivot, c), aug(col, c));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(aug(r, col)) == 0) continue;
            Rational f = aug(r, col) / aug(col, col);
            for (std::size_t c = col; c <= n; ++c) aug(r, c) -= f * aug(col, c);
        }
    }
    RationalVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = aug(i, n);
        for (std::size_t c = i + 1; c < n; ++c) s -= aug(i, c) * x[c];
        x[i] = s / aug(i, i);
    }
    return x;
}

std::size_t rank(const RationalMatrix& m) {
    RationalMatrix copy = m;
    return rref(copy).size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
    RationalMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(primitive_part(v));
    }
    return basis;
}

RationalVector apply(const RationalMatrix& m, const RationalVector& x) {
    if (m.cols() != x.size()) throw DomainError("apply: dimension mismatch");
    RationalVector y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) y[r] += m(r, c) * x[c];
    return y;
}

LineQuotient::LineQuotient(const RationalVector& direction) : direction_(primitive_part(direction)) {
    const std::size_t n = direction_.size();
    const auto& d = direction_;

    BigInt max_abs = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt a = abs(d[i].get_num());
        if (a > max_abs) {
            max_abs = a;
            k = i;
        }
    }

    // Columns of a unimodular V with d^T V = (1, 0, ..., 0).
    std::vector<std::vector<BigInt>> cols(n, std::vector<BigInt>(n, 0));
    if (max_abs == 1) {
        cols[0][k] = d[k].get_num();  // 1/d_k == d_k for d_k = +-1
        std::size_t slot = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            cols[slot][j] = 1;
            cols[slot][k] = -d[j].get_num() * d[k].get_num();
            ++slot;
        }
    } else {
        std::vector<BigInt> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = d[i].get_num();
            cols[i][i] = 1;
        }
        for (;;) {
            std::size_t p = n;
            for (std::size_t i = 0; i < n; ++i)
                if (row[i] != 0 && (p == n || abs(row[i]) < abs(row[p]))) p = i;
            bool reduced = false;
            for (std::size_t q = 0; q < n; ++q) {
                if (q == p || row[q] == 0) continue;
                BigInt f;
                mpz_fdiv_q(f.get_mpz_t(), row[q].get_mpz_t(), row[p].get_mpz_t());
                row[q] -= f * row[p];
                for (std::size_t i = 0; i < n; ++i) cols[q][i] -= f * cols[p][i];
                reduced = true;
            }
            if (!reduced) {
                if (row[p] < 0) {
                    row[p] = -row[p];
                    for (auto& x : cols[p]) x = -x;
                }
                if (p != 0) {
                    std::swap(cols[0], cols[p]);
                    std::swap(row[0], row[p]);
                }
                break;
            }
        }
    }

    section_ = RationalCovector(n);
    for (std::size_t i = 0; i < n; ++i) section_[i] = Rational(cols[0][i]);
    for (std::size_t c = 1; c < n; ++c) {
        RationalCovector y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = Rational(cols[c][i]);
        kernel_.push_back(std::move(y));
    }

    // Rows of V^{-1}: row 0 is d itself, rows 1.. are dual to the kernel basis.
    RationalMatrix v(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) v(i, c) = Rational(cols[c][i]);
    for (std::size_t j = 1; j < n; ++j) {
        // W_j solves V^T W_j = e_j.
        RationalMatrix vt(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) vt(r, c) = v(c, r);
        RationalVector e(n);
        e[j] = 1;
        auto w = solve_square(vt, e);
        dual_.push_back(*w);
    }
}

RationalVector LineQuotient::project(const RationalVector& xi) const {
    RationalVector out(kernel_.size());
    for (std::size_t j = 0; j < kernel_.size(); ++j) out[j] = pair(xi, kernel_[j]);
    return out;
}

RationalVector LineQuotient::lift(const RationalVector& xbar) const {
    if (xbar.size() != kernel_.size()) throw DomainError("LineQuotient::lift: dimension mismatch");
    RationalVector xi(dim());
    for (std::size_t j = 0; j < dual_.size(); ++j) xi += xbar[j] * dual_[j];
    return xi;
}

RationalCovector LineQuotient::lift_covector(const RationalCovector& ybar) const {
    if (ybar.size() != kernel_.size()) throw DomainError("LineQuotient::lift_covector: dimension mismatch");
    RationalCovector y(dim());
    for (std::size_t j = 0; j < kernel_.size(); ++j) y += ybar[j] * kernel_[j];
    return y;
}

RationalCovector LineQuotient::restrict_covector(const RationalCovector& a) const {
    if (sgn(pair(direction_, a)) != 0) throw DomainError("restrict_covector: covector does not annihilate the line");
    return quotient_part(a);
}

RationalCovector LineQuotient::quotient_part(const RationalCovector& a) const {
    RationalCovector out(dual_.size());
    for (std::size_t j = 0; j < dual_.size(); ++j) out[j] = pair(dual_[j], a);
    return out;
}

}  // namespace btoric
