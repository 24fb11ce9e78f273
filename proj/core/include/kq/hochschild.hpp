/*
 * hochschild.hpp
 * --------------
 * The shifted Hochschild complex of polydifferential operators as a DGLA:
 * differential, Gerstenhaber product/bracket, Maurer-Cartan residuals and the
 * gauge action of hbar-nilpotent arity-1 generators.  Also the graded-sign
 * utilities (Koszul signs, shuffles, decalage) used by the formality check.
 *
 * Grading convention: the degree of an arity-m operator is m-1 throughout.
 */
#pragma once

#include "kq/multidiffop.hpp"
#include "kq/series.hpp"

namespace kq {

using OpSeries = HbarSeries<MultiDiffOp>;

// The pointwise multiplication mu(f,g) = f*g as an arity-2 operator.
MultiDiffOp mu(int d);

// Partial insertion f •_slot g: plug g's output into the given argument slot
// of f (0-based); f's derivative on that slot distributes over g's coefficient
// and arguments by a symbolic Leibniz expansion.  No Gerstenhaber sign here.
MultiDiffOp gerstenhaber_insert(const MultiDiffOp& f, const MultiDiffOp& g, int slot);

// f • g = sum_i (-1)^{i q} f •_i g  (q = shifted degree of g).
MultiDiffOp gerstenhaber_product(const MultiDiffOp& f, const MultiDiffOp& g);

// [f,g]_G = f•g - (-1)^{pq} g•f.
MultiDiffOp gerstenhaber_bracket(const MultiDiffOp& f, const MultiDiffOp& g);

// Hochschild differential: arity m -> m+1,
// (delta f)(u_0..u_m) = u_0 f(u_1..) + sum_r (-1)^r f(.., u_{r-1}u_r, ..)
//                      + (-1)^{m+1} f(..) u_m.
MultiDiffOp hochschild_delta(const MultiDiffOp& f);

// d_H f = (-1)^{arity+1} delta f; satisfies d_H f = [mu, f]_G.
MultiDiffOp modified_d(const MultiDiffOp& f);

// --- hbar-series level -----------------------------------------------------

struct GaugeElement {
    // arity-1 operator series with zero hbar^0 part (element of hbar*Dpoly^0).
    OpSeries generator;

    explicit GaugeElement(OpSeries g);   // validates arity/hbar^0
};

// Maurer-Cartan residual d_H B + 1/2 [B,B]_G of an arity-2 series with zero
// hbar^0 part; equals the associator defect of mu + B.
OpSeries mc_residual(const OpSeries& B);

// e^{[-,x0]_G}(mu + B) - mu, exact at the series truncation order.
OpSeries gauge_act(const GaugeElement& x0, const OpSeries& B);

// Baker-Campbell-Hausdorff: log(e^x e^y) up to (and exact for) truncation
// order <= 4 given that x, y start at hbar^1.
OpSeries bch(const GaugeElement& x, const GaugeElement& y);

// --- graded signs ----------------------------------------------------------

// sigma is given by its images: position k receives x_{sigma[k]} (0-based).
// Returns epsilon with x_1...x_n = epsilon * x_{sigma(1)}...x_{sigma(n)}.
int koszul_sign_sym(const std::vector<int>& degrees, const std::vector<int>& sigma);
// chi = epsilon * sgn(sigma).
int koszul_sign_ext(const std::vector<int>& degrees, const std::vector<int>& sigma);

int permutation_sign(const std::vector<int>& sigma);

// (-1)^{sum_k (n-k)(|x_k|-1)} with k running 1..n.
int decalage_sign(const std::vector<int>& degrees);

// All (i, n-i)-shuffles: sigma with sigma(1)<...<sigma(i) and
// sigma(i+1)<...<sigma(n), as 0-based image vectors.
std::vector<std::vector<int>> shuffles(int i, int n);

} // namespace kq
