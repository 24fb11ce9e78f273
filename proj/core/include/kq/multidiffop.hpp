/*
 * multidiffop.hpp
 * ---------------
 * Polydifferential operators: m-ary maps
 *     (u_1, ..., u_m) |-> sum_t  c_t(x) * d^{K_{t,1}}u_1 * ... * d^{K_{t,m}}u_m
 * with polynomial coefficients c_t.  These are the elements of the (shifted)
 * Hochschild complex D_poly; the shifted degree is arity - 1.  Arity-0
 * elements are identified with plain polynomials.
 */
#pragma once

#include "kq/poly.hpp"

#include <map>
#include <vector>

namespace kq {

class MultiDiffOp {
public:
    // One derivative multi-index per argument.
    using DerivKey = std::vector<MultiIndex>;
    using TermMap = std::map<DerivKey, Poly>;

    MultiDiffOp(int d, int arity) : d_(d), arity_(arity) {}

    static MultiDiffOp zero(int d, int arity) { return MultiDiffOp(d, arity); }
    // Arity-0 embedding of a polynomial (the augmentation C^0(A,A) = A).
    static MultiDiffOp from_poly(const Poly& p);

    int dimension() const { return d_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }   // shifted Hochschild degree
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const DerivKey& derivs, const Poly& coeff);

    MultiDiffOp operator-() const;
    MultiDiffOp& operator+=(const MultiDiffOp& o);
    MultiDiffOp& operator-=(const MultiDiffOp& o);
    friend MultiDiffOp operator+(MultiDiffOp a, const MultiDiffOp& b) { a += b; return a; }
    friend MultiDiffOp operator-(MultiDiffOp a, const MultiDiffOp& b) { a -= b; return a; }
    MultiDiffOp scaled(const Scalar& s) const;

    friend bool operator==(const MultiDiffOp& a, const MultiDiffOp& b) {
        return a.d_ == b.d_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiDiffOp& a, const MultiDiffOp& b) { return !(a == b); }

    // Evaluate on arguments; |args| must equal the arity.
    Poly apply(const std::vector<Poly>& args) const;

    // The operator with arguments i and j swapped (0-based slots).
    MultiDiffOp swapped_args(int i, int j) const;

    std::string to_string() const;

private:
    int d_;
    int arity_;
    TermMap terms_;
};

} // namespace kq
