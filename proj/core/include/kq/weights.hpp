/*
 * weights.hpp
 * -----------
 * Numerical weight integrals for admissible graphs: the hyperbolic angle map
 * on the upper half-plane, its gradient, Monte-Carlo estimation of the
 * normalized weight over the gauge-fixed configuration space, an analytic
 * table for the closed-form families, and the vanishing spot-check on
 * ground-free configuration spaces.
 */
#pragma once

#include "kq/graphs.hpp"
#include "kq/scalar.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace kq {

struct WeightEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    std::string graph_key;
};

/// Hyperbolic angle at p subtended by q: arg((q-p)/(q-conj(p))), principal
/// branch in (-pi, pi].  Requires p != q and both in the closed upper
/// half-plane.
double phi(std::complex<double> p, std::complex<double> q);

/// Partials of phi in the order (d/dRe p, d/dIm p, d/dRe q, d/dIm q).
std::array<double, 4> phi_gradient(std::complex<double> p, std::complex<double> q);

struct McOptions {
    // Ground gauge for m = 2 (the two frozen real points).  m = 1 always
    // freezes q_1 = 0 and Im p_1 = 1.
    double q1 = 0.0;
    double q2 = 1.0;
};

/// Monte-Carlo estimate of the star-order-class weight
///     W_Gamma = (2pi)^{-#E} int w_G
/// over the gauge slice of the configuration space.  This is the coefficient
/// carried by one star-ordering representative: summing W*B over the whole
/// star-order orbit of a graph reproduces the per-vertex factorial prefactors
/// of the fully labeled sum, because each transposition flips both factors.
/// Graphs whose edge count differs from 2n+m-2 have exact weight 0 (zero std
/// error).  Supports m in {1, 2}.
WeightEstimate mc_weight(const AdmissibleGraph& g, long long samples,
                         std::uint64_t seed, const McOptions& opts = {});

/// Exact weights for the closed-form families, with the sign of the given
/// star ordering:
///   - Moyal family: n aerial vertices, m = 2, every star a permutation of
///     (-1,-2): W = +-1/2^n.
///   - First-order family in G_{1,m}: one aerial vertex whose star is a
///     permutation of (-1,...,-m): W = +-1/m!.
std::optional<Rational> analytic_weight(const AdmissibleGraph& g);

/// Weight-form integral over the ground-free configuration space C_n
/// (n in {2,3}; m must be 0), with plain planar angle forms d arg(t - s) and
/// the gauge p_1 = 0, p_2 on the unit circle.  For n = 3 and edge count 3 the
/// integral vanishes; for n = 2 with a single edge it is the full turn 2pi.
WeightEstimate vanishing_check(const AdmissibleGraph& g, long long samples,
                               std::uint64_t seed);

} // namespace kq
