/*
 * star.hpp
 * --------
 * Assembly of the graph-weighted star product from a Poisson bivector:
 * per-order coefficients built as weighted sums of graph operators, the
 * extraction of the first-order bracket, associativity verification,
 * gauge transformation, the convention switch hbar -> i*hbar, and the
 * small formality-equation residuals at n <= 2.
 *
 * Convention: the assembled product uses the hbar-absorbing real form
 *     f * g = fg + sum_n hbar^n/n! U_n(pi,...,pi)(f,g),
 * whose first-order commutator is hbar*{f,g} with no explicit i.
 */
#pragma once

#include "kq/graphs.hpp"
#include "kq/hochschild.hpp"
#include "kq/polyvector.hpp"
#include "kq/weights.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kq {

/// Where the per-graph weights come from.  Resolution always prefers an
/// analytic closed form; otherwise a supplied table entry (keyed by the
/// star-order key); otherwise, for the monte_carlo kind, a fresh estimate
/// with a per-graph offset of the base seed.  A graph with a nonzero
/// operator and no resolvable weight is an error.
struct WeightSource {
    enum class Kind { analytic, table, monte_carlo };

    Kind kind = Kind::analytic;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::map<std::string, Rational> table;   // star_order_key -> class weight

    static WeightSource analytic_only() { return {}; }
    static WeightSource monte_carlo(long long samples, std::uint64_t seed) {
        WeightSource s;
        s.kind = Kind::monte_carlo;
        s.samples = samples;
        s.seed = seed;
        return s;
    }
    static WeightSource from_table(std::map<std::string, Rational> t) {
        WeightSource s;
        s.kind = Kind::table;
        s.table = std::move(t);
        return s;
    }
};

/// One resolved weight, for reproducibility reports.
struct WeightRecord {
    int order = 0;
    std::string graph_key;       // star-order class key
    double weight = 0.0;
    double std_error = 0.0;      // 0 for analytic / table weights
    bool analytic = false;
};

struct StarProduct {
    OpSeries terms;                          // hbar^0 coefficient is mu
    std::vector<WeightRecord> provenance;

    int order() const { return terms.truncation_order(); }
    int dimension() const { return terms.zero_payload().dimension(); }

    /// f * g as a truncated series of polynomials.
    HbarSeries<Poly> product(const Poly& f, const Poly& g) const;
};

/// Builds the product of a Poisson bivector up to hbar^N (N <= 3): the
/// order-n coefficient is 1/n! times the weighted sum of graph operators
/// over the two-ground admissible graphs with n aerial vertices, one class
/// per star ordering (each class weight already accounts for its orbit).
StarProduct assemble(const PolyVectorField& pi, int N, const WeightSource& source);

/// The bivector read off the antisymmetric first-derivative part of the
/// hbar^1 coefficient; returns the input bivector for assembled products.
PolyVectorField first_order_bracket(const StarProduct& s);

struct AssociativityReport {
    OpSeries residual;              // exact associator defect per hbar order
    double max_violation = 0.0;     // largest |coefficient| found anywhere
    int first_violation_order = -1; // -1 when clean
    bool associative = true;

    std::string to_string() const;
};

/// Symbolic Maurer-Cartan residual of the deformation part plus an
/// exhaustive sweep of the associator over monomial triples of total degree
/// at most max_monomial_degree.  `depth` is the hbar order the check runs
/// through; the default is the stored order, while a larger value treats the
/// missing higher coefficients as zero and exposes the obstruction they
/// would have to cancel.
AssociativityReport verify_associativity(const StarProduct& s, int max_monomial_degree,
                                         int depth = -1);

/// Conjugated product phi o * o (phi^{-1} (x) phi^{-1}), truncated at the
/// same order; the first-order bracket is unchanged.
StarProduct gauge_transform(const StarProduct& s, const GaugeElement& phi);

/// Convention switch hbar -> i*hbar: scales the order-n coefficient by i^n,
/// mapping the real-form product onto the explicit-i (physics) form.
StarProduct substitute_i_hbar(const StarProduct& s);

struct FormalityReport {
    double residual = 0.0;    // max |coefficient| of (diamond side) - (composition side)
    double std_error = 0.0;   // propagated Monte-Carlo sigma at that coefficient
};

/// Residual of the formality constraint at Taylor order n (n <= 2) with two
/// ground arguments: the diamond term against the double sum of insertions
/// of one graph coefficient into another, both evaluated on the three test
/// polynomials fs.  Exactly zero at n = 1; zero within the propagated
/// Monte-Carlo error at n = 2.
FormalityReport formality_residual(int n, const std::vector<PolyVectorField>& xs,
                                   const std::vector<Poly>& fs, const WeightSource& source);

} // namespace kq
