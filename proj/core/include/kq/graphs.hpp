/*
 * graphs.hpp
 * ----------
 * Admissible directed graphs on n "aerial" (first-type) vertices and m
 * "ground" (second-type) vertices, with ordered out-stars, and the synthesis
 * of the m-ary polydifferential operator a graph cuts out of n polyvector
 * fields.
 *
 * Target encoding: a positive integer k (1..n) is the aerial vertex k; a
 * negative integer -j (-1..-m) is the ground vertex j.  Ground vertices emit
 * no edges (structural).
 */
#pragma once

#include "kq/multidiffop.hpp"
#include "kq/polyvector.hpp"

#include <string>
#include <vector>

namespace kq {

struct AdmissibleGraph {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> stars;   // stars[k]: ordered targets of aerial vertex k+1

    int edge_count() const;
    bool is_connected() const;             // underlying undirected graph on n+m vertices

    // Structural admissibility: star count, target ranges, no loops, no
    // repeated (source, target) edge, 2n+m-2 >= 0.  Throws std::invalid_argument.
    void validate() const;

    friend bool operator==(const AdmissibleGraph& a, const AdmissibleGraph& b) {
        return a.n == b.n && a.m == b.m && a.stars == b.stars;
    }
    friend bool operator!=(const AdmissibleGraph& a, const AdmissibleGraph& b) { return !(a == b); }

    std::string to_string() const;
};

// All admissible graphs with the prescribed ordered out-degrees, distinct
// ordered stars giving distinct graphs.  Connectivity is enforced by default;
// pass false to include disconnected graphs (the sum over all graphs, which
// some normalizations use).
std::vector<AdmissibleGraph> enumerate_graphs(int n, int m,
                                              const std::vector<int>& out_degrees,
                                              bool require_connected = true);

// Key equal iff the graphs agree up to reordering each star (signs are the
// weight's business, not the key's).
std::string star_order_key(const AdmissibleGraph& g);

// Key equal iff the graphs agree up to relabeling aerial vertices and
// reordering stars; exhaustive minimal labeling, intended for n <= 6.
std::string canonical_key(const AdmissibleGraph& g);

// Relabel aerial vertices: perm[k-1] is the new label of old vertex k
// (1-based).  Ground vertices and star orderings are untouched.
AdmissibleGraph relabeled(const AdmissibleGraph& g, const std::vector<int>& perm);

// The operator B_Gamma: one derivative index per edge, summed over all index
// maps E -> {1..d}; aerial vertex k contributes the antisymmetric extension of
// xs[k] evaluated on its out-edge indices, differentiated along its in-edges;
// ground vertex j collects the in-edge derivatives on argument j.  Zero unless
// deg(xs[k]) == #Star(k) for every k.
MultiDiffOp b_gamma(const AdmissibleGraph& g, const std::vector<PolyVectorField>& xs);

} // namespace kq
