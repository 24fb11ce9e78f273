/*
 * weyl.hpp
 * --------
 * The polynomial Weyl algebra on n canonical pairs and the maps in and out of
 * it: Weyl (symmetric) quantization, normal-ordered composition, the Wigner
 * symbol, the closed-form Moyal product, and the Groenewold no-go residual.
 *
 * Operators are stored normal-ordered: sum c_{IJ}(hbar) qhat^I phat^J with all
 * qhat's to the left.  Re-ordering uses [qhat_i, phat_j] = i hbar delta_ij.
 * Phase-space polynomials live on 2n variables ordered (q_1..q_n, p_1..p_n).
 */
#pragma once

#include "kq/poly.hpp"
#include "kq/series.hpp"

#include <map>
#include <vector>

namespace kq {

using ScalarSeries = HbarSeries<Scalar>;

class WeylOp {
public:
    // Exact polynomial computations never get near this many hbar powers; the
    // generous cap keeps HbarSeries' min-truncation semantics harmless here.
    static constexpr int kTruncation = 40;

    // (q exponents, p exponents), each of length n.
    using Key = std::pair<MultiIndex, MultiIndex>;
    using TermMap = std::map<Key, ScalarSeries>;

    explicit WeylOp(int n) : n_(n) {}

    static WeylOp identity(int n);
    static WeylOp q_hat(int n, int axis);   // 1-based
    static WeylOp p_hat(int n, int axis);

    int pairs() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key& key, const ScalarSeries& c);
    void add_term_at(const Key& key, int hbar_order, const Scalar& c);

    WeylOp operator-() const;
    WeylOp& operator+=(const WeylOp& o);
    WeylOp& operator-=(const WeylOp& o);
    friend WeylOp operator+(WeylOp a, const WeylOp& b) { a += b; return a; }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) { a -= b; return a; }
    WeylOp scaled(const Scalar& s) const;
    // Multiply by c * hbar^k.
    WeylOp scaled_hbar(const Scalar& c, int hbar_power) const;
    // Exact division by (i hbar); throws if any term has a nonzero hbar^0 part.
    WeylOp divided_by_ihbar() const;

    friend bool operator==(const WeylOp& a, const WeylOp& b);
    friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

    std::string to_string() const;

private:
    int n_;
    TermMap terms_;
};

WeylOp weyl_compose(const WeylOp& a, const WeylOp& b);
WeylOp commutator(const WeylOp& a, const WeylOp& b);

// Symmetric (Weyl) quantization of a phase-space polynomial on 2n variables:
// each monomial is averaged over all interleavings of its q and p letters.
WeylOp weyl_quantize(const Poly& f, int n);

// Inverse of weyl_quantize on its image (triangular elimination from the top
// degree down); wigner_symbol(weyl_quantize(f)) == f + 0*hbar.
HbarSeries<Poly> wigner_symbol(const WeylOp& a);

// Canonical Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).
Poly poisson_canonical(const Poly& f, const Poly& g, int n);

// Closed-form Moyal product for a constant antisymmetric d x d matrix pi:
//   sum_m (i hbar)^m / (2^m m!) pi^{i1 j1}...pi^{im jm} (d_I f)(d_J g).
// Exact for polynomials; output truncated at N.
HbarSeries<Poly> moyal_product(const Poly& f, const Poly& g,
                               const std::vector<std::vector<Scalar>>& pi, int N);

struct GroenewoldReport {
    Poly poisson_side;       // must be identically 0
    WeylOp operator_side;    // the no-go discrepancy, 3 (i hbar)^2 * id = -3 hbar^2 * id
};

// Q_W({q^3,p^3}) - 1/12 Q_W({{q^3,p^2},{q^2,p^3}}) computed classically and
// via nested commutators of Weyl quantizations (n = 1).
GroenewoldReport groenewold_residual();

} // namespace kq
