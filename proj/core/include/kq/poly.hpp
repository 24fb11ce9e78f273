/*
 * poly.hpp
 * --------
 * Exact multivariate polynomials over Gaussian rationals.
 *
 * A Poly on R^d maps exponent multi-indices (dense length-d vectors) to Scalar
 * coefficients.  Terms are kept in graded-lexicographic order and zero
 * coefficients are never stored, so equality is structural.
 */
#pragma once

#include "kq/scalar.hpp"

#include <map>
#include <vector>
#include <string>

namespace kq {

using MultiIndex = std::vector<int>;

// Graded lexicographic: compare total degree first, then lexicographically.
struct GradedLex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

int mi_total(const MultiIndex& a);
MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);

// All ways of writing `k` as an ordered sum of `parts` multi-indices, with the
// multinomial coefficient k! / (a_1! ... a_parts!) attached (computed per axis).
// This is the combinatorial engine behind symbolic Leibniz expansion.
std::vector<std::pair<std::vector<MultiIndex>, Rational>>
mi_splits(const MultiIndex& k, int parts);

class Poly {
public:
    using TermMap = std::map<MultiIndex, Scalar, GradedLex>;

    explicit Poly(int d = 1) : d_(d) {}
    Poly(int d, TermMap terms);

    static Poly zero(int d) { return Poly(d); }
    static Poly constant(int d, const Scalar& c);
    static Poly variable(int d, int axis);                 // axis is 1-based
    static Poly monomial(int d, const MultiIndex& exp, const Scalar& c);

    int dimension() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;                                     // -1 for the zero poly
    Scalar coeff(const MultiIndex& exp) const;

    void add_term(const MultiIndex& exp, const Scalar& c);  // merges + drops zeros

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Scalar& s) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.d_ == b.d_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly partial(int axis) const;                           // 1-based
    Poly partial_mi(const MultiIndex& k) const;             // iterated partials
    Scalar eval(const std::vector<Scalar>& point) const;

    // Canonical rendering, e.g. "2*x1^2*x2 + (1/2+3i)*x3".
    std::string to_string() const;

private:
    int d_;
    TermMap terms_;
};

} // namespace kq
