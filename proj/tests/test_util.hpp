/*
 * Shared helpers for property tests: deterministic random generators for
 * polynomials, polydifferential operators and polyvector fields.
 */
#pragma once

#include "kq/hochschild.hpp"
#include "kq/poly.hpp"
#include "kq/polyvector.hpp"

#include <random>

namespace kqtest {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline kq::Scalar random_scalar(Rng& rng, bool complex_part = false) {
    kq::Rational re(uniform(rng, -4, 4), uniform(rng, 1, 3));
    re.canonicalize();
    if (!complex_part) return kq::Scalar(re);
    kq::Rational im(uniform(rng, -2, 2), uniform(rng, 1, 2));
    im.canonicalize();
    return kq::Scalar(re, im);
}

inline kq::Poly random_poly(Rng& rng, int d, int max_deg, int nterms,
                            bool complex_part = false) {
    kq::Poly p(d);
    for (int t = 0; t < nterms; ++t) {
        kq::MultiIndex e(d, 0);
        int budget = uniform(rng, 0, max_deg);
        for (int j = 0; j < budget; ++j) e[uniform(rng, 0, d - 1)] += 1;
        p.add_term(e, random_scalar(rng, complex_part));
    }
    return p;
}

inline kq::MultiIndex random_deriv(Rng& rng, int d, int max_order) {
    kq::MultiIndex k(d, 0);
    int budget = uniform(rng, 0, max_order);
    for (int j = 0; j < budget; ++j) k[uniform(rng, 0, d - 1)] += 1;
    return k;
}

inline kq::MultiDiffOp random_op(Rng& rng, int d, int arity, int nterms = 2,
                                 int max_deriv = 2, int max_coeff_deg = 2) {
    kq::MultiDiffOp op(d, arity);
    for (int t = 0; t < nterms; ++t) {
        kq::MultiDiffOp::DerivKey key;
        for (int a = 0; a < arity; ++a) key.push_back(random_deriv(rng, d, max_deriv));
        op.add_term(key, random_poly(rng, d, max_coeff_deg, 2));
    }
    return op;
}

inline kq::PolyVectorField random_polyvector(Rng& rng, int d, int degree,
                                             int nterms = 2, int max_coeff_deg = 2) {
    kq::PolyVectorField X(d, degree);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> idx;
        for (int a = 0; a < degree; ++a) idx.push_back(uniform(rng, 1, d));
        X.add_component(idx, random_poly(rng, d, max_coeff_deg, 2));
    }
    return X;
}

// Operator equality probed by applying both sides to shared random arguments
// (used when a structural comparison is not what the property states).
inline bool agree_on_random_args(Rng& rng, const kq::MultiDiffOp& a,
                                 const kq::MultiDiffOp& b, int rounds = 4) {
    if (a.arity() != b.arity()) return false;
    for (int r = 0; r < rounds; ++r) {
        std::vector<kq::Poly> args;
        for (int j = 0; j < a.arity(); ++j)
            args.push_back(random_poly(rng, a.dimension(), 2, 2));
        if (a.apply(args) != b.apply(args)) return false;
    }
    return true;
}

} // namespace kqtest
