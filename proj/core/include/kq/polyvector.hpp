/*
 * polyvector.hpp
 * --------------
 * Polyvector fields on R^d with polynomial coefficients: the graded algebra
 * T_poly carrying the wedge product, the diamond product, and the
 * Schouten-Nijenhuis bracket (computed through diamond).
 *
 * Storage convention: a k-vector field keeps one Poly per strictly increasing
 * index tuple i1<...<ik; the full antisymmetric tensor is the sign-only
 * extension X^{i_sigma(1)...i_sigma(k)} = sgn(sigma) * stored coefficient.
 * (This normalization is pinned by the Moyal acceptance test; see ledger.)
 */
#pragma once

#include "kq/multidiffop.hpp"
#include "kq/poly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace kq {

class PolyVectorField {
public:
    // Index tuples are 1-based axes, strictly increasing.
    using IndexTuple = std::vector<int>;
    using CoeffMap = std::map<IndexTuple, Poly>;

    PolyVectorField(int d, int degree) : d_(d), k_(degree) {}

    static PolyVectorField zero(int d, int degree) { return PolyVectorField(d, degree); }
    static PolyVectorField function(const Poly& f);              // degree 0
    static PolyVectorField basis_vector(int d, int axis);        // d/dx_axis

    int dimension() const { return d_; }
    int degree() const { return k_; }                            // tensor degree k
    int shifted_degree() const { return k_ - 1; }                // T_poly grading
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Accepts any tuple; sorts it internally and applies the sign, so
    // add_component({2,1}, p) adds -p on (1,2).  Repeated indices are dropped.
    void add_component(const IndexTuple& idx, const Poly& coeff);
    // Signed lookup on an arbitrary tuple (antisymmetric extension).
    Poly component(const IndexTuple& idx) const;

    PolyVectorField operator-() const;
    PolyVectorField& operator+=(const PolyVectorField& o);
    PolyVectorField& operator-=(const PolyVectorField& o);
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { a += b; return a; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { a -= b; return a; }
    PolyVectorField scaled(const Scalar& s) const;

    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
        return a.d_ == b.d_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const PolyVectorField& a, const PolyVectorField& b) { return !(a == b); }

    std::string to_string() const;

private:
    int d_;
    int k_;
    CoeffMap coeffs_;
};

PolyVectorField wedge(const PolyVectorField& X, const PolyVectorField& Y);

// X diamond Y, degree p + q - 1 (requires deg X >= 1):
//   sum_r sum (-1)^{r+1} X^{i1..ip} d_{i_r} Y^{j1..jq} d_{i1}^..^{no i_r}..^d_{jq}
PolyVectorField diamond(const PolyVectorField& X, const PolyVectorField& Y);

// Schouten-Nijenhuis bracket via diamond:
//   [X,Y] = (-1)^p X<>Y - (-1)^{(p-1)q} Y<>X   (p,q shifted degrees).
PolyVectorField schouten_nijenhuis(const PolyVectorField& X, const PolyVectorField& Y);

struct PoissonCheck {
    bool poisson;
    PolyVectorField residual;   // [pi,pi]_SN
};
PoissonCheck is_poisson(const PolyVectorField& pi);

// HKR map: a k-vector field to the arity-k operator
//   (1/k!) sum X^{i1..ik} d_{i1}f_1 ... d_{ik}f_k  (sign-only extension).
MultiDiffOp hkr(const PolyVectorField& X);

// The Poisson bracket pairing {f,g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g).
Poly poisson_pairing(const PolyVectorField& pi, const Poly& f, const Poly& g);

} // namespace kq
