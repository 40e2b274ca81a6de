#pragma once

// Exact rational linear algebra over the integer lattice Z^n.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace btoric {

using BigInt = mpz_class;
using Rational = mpq_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Accepts "p", "-p", "p/q". Anything else (decimals, exponents) is rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
bool is_integral(const Rational& q);
BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

namespace detail {
struct PointTag {};
struct DualTag {};
}  // namespace detail

// Coordinates of an element of t* (Tag = PointTag) or t (Tag = DualTag).
template <class Tag>
struct Coords {
    std::vector<Rational> coords;

    Coords() = default;
    explicit Coords(std::size_t n) : coords(n) {}
    explicit Coords(std::vector<Rational> c) : coords(std::move(c)) {}
    Coords(std::initializer_list<Rational> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    Rational& operator[](std::size_t i) { return coords[i]; }
    const Rational& operator[](std::size_t i) const { return coords[i]; }

    bool is_zero() const {
        for (const auto& c : coords)
            if (sgn(c) != 0) return false;
        return true;
    }
    bool is_integral() const {
        for (const auto& c : coords)
            if (!btoric::is_integral(c)) return false;
        return true;
    }

    friend bool operator==(const Coords& a, const Coords& b) { return a.coords == b.coords; }
    friend bool operator<(const Coords& a, const Coords& b) { return a.coords < b.coords; }

    Coords& operator+=(const Coords& o) {
        for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
        return *this;
    }
    Coords& operator-=(const Coords& o) {
        for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
        return *this;
    }
    Coords& operator*=(const Rational& s) {
        for (auto& c : coords) c *= s;
        return *this;
    }
    friend Coords operator+(Coords a, const Coords& b) { return a += b; }
    friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
    friend Coords operator*(const Rational& s, Coords a) { return a *= s; }
    friend Coords operator-(Coords a) {
        for (auto& c : a.coords) c = -c;
        return a;
    }
};

using RationalVector = Coords<detail::PointTag>;
using RationalCovector = Coords<detail::DualTag>;

// Standard pairing <xi, X> between t* and t.
Rational pair(const RationalVector& xi, const RationalCovector& x);

// Same-index coordinate dot products, for when both sides live in one space.
template <class Tag>
Rational dot(const Coords<Tag>& a, const Coords<Tag>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Identification of Z^n with its dual through the standard basis.
RationalCovector transpose(const RationalVector& v);
RationalVector transpose(const RationalCovector& v);

std::string to_string(const RationalVector& v);
std::string to_string(const RationalCovector& v);

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntegerMatrix = DenseMatrix<BigInt>;
using RationalMatrix = DenseMatrix<Rational>;

// Rows of the matrix are the given vectors.
template <class Tag>
RationalMatrix rows_of(std::span<const Coords<Tag>> rows, std::size_t dim) {
    RationalMatrix m(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
    return m;
}

// Fraction-free Bareiss elimination. Requires a square matrix.
BigInt determinant(const IntegerMatrix& m);

// Unique integer vector on the ray of v with coprime coordinates.
RationalVector primitive_part(const RationalVector& v);
RationalCovector primitive_part(const RationalCovector& v);

// True iff the n integral vectors of dimension n form a basis of Z^n.
bool is_unimodular(std::span<const RationalVector> vectors);
// Signed determinant of n integral vectors, checked like is_unimodular.
BigInt lattice_determinant(std::span<const RationalVector> vectors);

// Exact solution of A x = b, or nullopt when A is singular.
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

std::size_t rank(const RationalMatrix& m);
// Basis of {x : M x = 0}, from the reduced row echelon form; each basis
// vector is scaled to its primitive integer representative.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

RationalVector apply(const RationalMatrix& m, const RationalVector& x);

// Quotient of t* by the line spanned by a primitive integer vector d,
// with lattice-compatible coordinates on t* / R d.
//
// When d has an entry of absolute value 1, the coordinate k of largest
// |d_i| (lowest index on ties) is dropped and [xi]_j = xi_j - d_j xi_k / d_k.
// Otherwise the quotient basis comes from an extended-gcd unimodular
// completion of d.
class LineQuotient {
public:
    explicit LineQuotient(const RationalVector& direction);

    std::size_t dim() const { return direction_.size(); }
    const RationalVector& direction() const { return direction_; }

    // Integer covector S with <d, S> = 1; xi = <xi,S> d + lift(project(xi)).
    const RationalCovector& section() const { return section_; }
    // Integer covectors Y_1..Y_{n-1} spanning d^perp ∩ Z^n; project(xi)_j = <xi, Y_j>.
    const std::vector<RationalCovector>& kernel_basis() const { return kernel_; }

    RationalVector project(const RationalVector& xi) const;
    RationalVector lift(const RationalVector& xbar) const;
    // Covector on the quotient -> covector on t* annihilating d.
    RationalCovector lift_covector(const RationalCovector& ybar) const;
    // Covector annihilating d -> covector on the quotient. Requires <d, a> = 0.
    RationalCovector restrict_covector(const RationalCovector& a) const;
    // For any covector a: <xi, a> = <xi, S> <d, a> + <project(xi), quotient_part(a)>.
    RationalCovector quotient_part(const RationalCovector& a) const;

private:
    RationalVector direction_;
    RationalCovector section_;
    std::vector<RationalCovector> kernel_;
    std::vector<RationalVector> dual_;  // W_2..W_n, dual to kernel_
};

}  // namespace btoric
