#include "kq/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kq {

int AdmissibleGraph::edge_count() const {
    int e = 0;
    for (const auto& s : stars) e += static_cast<int>(s.size());
    return e;
}

bool AdmissibleGraph::is_connected() const {
    const int total = n + m;
    if (total == 0) return true;
    // Union-find over aerial vertices 0..n-1 and ground vertices n..n+m-1.
    std::vector<int> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int k = 0; k < n; ++k)
        for (int t : stars[k]) {
            int w = t > 0 ? t - 1 : n - t - 1;
            parent[find(k)] = find(w);
        }
    int root = find(0);
    for (int v = 1; v < total; ++v)
        if (find(v) != root) return false;
    return true;
}

void AdmissibleGraph::validate() const {
    if (n < 0 || m < 0 || 2 * n + m - 2 < 0)
        throw std::invalid_argument("graph: need n,m >= 0 and 2n+m-2 >= 0");
    if (static_cast<int>(stars.size()) != n)
        throw std::invalid_argument("graph: one star per aerial vertex required");
    for (int k = 0; k < n; ++k) {
        std::set<int> seen;
        for (int t : stars[k]) {
            if (t == 0 || t > n || t < -m)
                throw std::invalid_argument("graph: target out of range");
            if (t == k + 1)
                throw std::invalid_argument("graph: loop edge");
            if (!seen.insert(t).second)
                throw std::invalid_argument("graph: repeated edge");
        }
    }
}

std::string AdmissibleGraph::to_string() const {
    std::ostringstream os;
    os << "G(" << n << "," << m << ")[";
    for (int k = 0; k < n; ++k) {
        if (k) os << "; ";
        for (size_t j = 0; j < stars[k].size(); ++j) {
            if (j) os << ",";
            os << stars[k][j];
        }
    }
    os << "]";
    return os.str();
}

namespace {

void ordered_tuples(const std::vector<int>& pool, int len, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    for (int t : pool) {
        if (std::find(cur.begin(), cur.end(), t) != cur.end()) continue;
        cur.push_back(t);
        ordered_tuples(pool, len - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<AdmissibleGraph> enumerate_graphs(int n, int m,
                                              const std::vector<int>& out_degrees,
                                              bool require_connected) {
    if (n < 0 || m < 0 || 2 * n + m - 2 < 0)
        throw std::invalid_argument("enumerate_graphs: need n,m >= 0 and 2n+m-2 >= 0");
    if (static_cast<int>(out_degrees.size()) != n)
        throw std::invalid_argument("enumerate_graphs: out-degree list must have length n");

    // Per-vertex candidate stars: ordered tuples of distinct allowed targets.
    std::vector<std::vector<std::vector<int>>> options(n);
    for (int k = 0; k < n; ++k) {
        if (out_degrees[k] < 0) return {};
        std::vector<int> pool;
        for (int t = 1; t <= n; ++t)
            if (t != k + 1) pool.push_back(t);
        for (int j = 1; j <= m; ++j) pool.push_back(-j);
        std::vector<int> cur;
        ordered_tuples(pool, out_degrees[k], cur, options[k]);
        if (options[k].empty()) return {};
    }

    std::vector<AdmissibleGraph> out;
    AdmissibleGraph g{n, m, std::vector<std::vector<int>>(n)};
    std::vector<size_t> pick(n, 0);
    // Odometer over the per-vertex option lists.
    while (true) {
        for (int k = 0; k < n; ++k) g.stars[k] = options[k][pick[k]];
        if (!require_connected || g.is_connected()) out.push_back(g);
        int k = 0;
        while (k < n && ++pick[k] == options[k].size()) pick[k++] = 0;
        if (k == n) break;                  // n = 0 yields the single empty graph
    }
    return out;
}

namespace {

std::string serialize_sorted(const AdmissibleGraph& g) {
    std::ostringstream os;
    os << g.n << "|" << g.m;
    for (const auto& star : g.stars) {
        std::vector<int> s(star);
        std::sort(s.begin(), s.end());
        os << ";";
        for (size_t j = 0; j < s.size(); ++j) {
            if (j) os << ",";
            os << s[j];
        }
    }
    return os.str();
}

} // namespace

std::string star_order_key(const AdmissibleGraph& g) {
    return serialize_sorted(g);
}

std::string canonical_key(const AdmissibleGraph& g) {
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 1);
    std::string best;
    do {
        std::string s = serialize_sorted(relabeled(g, perm));
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.empty()) best = serialize_sorted(g);   // n = 0
    return best;
}

AdmissibleGraph relabeled(const AdmissibleGraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n)
        throw std::invalid_argument("relabeled: permutation size mismatch");
    AdmissibleGraph out{g.n, g.m, std::vector<std::vector<int>>(g.n)};
    for (int k = 0; k < g.n; ++k) {
        std::vector<int> star(g.stars[k]);
        for (int& t : star)
            if (t > 0) t = perm[t - 1];
        out.stars[perm[k] - 1] = std::move(star);
    }
    return out;
}

namespace {

/// One way of feeding indices to an aerial vertex: the ordered out-edge
/// indices together with the signed stored coefficient.
struct VertexChoice {
    std::vector<int> indices;   // 1-based axis per out-edge, in star order
    Poly coeff;
};

int inversion_parity(const std::vector<int>& v) {
    int inv = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++inv;
    return inv % 2;
}

} // namespace

MultiDiffOp b_gamma(const AdmissibleGraph& g, const std::vector<PolyVectorField>& xs) {
    g.validate();
    if (static_cast<int>(xs.size()) != g.n)
        throw std::invalid_argument("b_gamma: need one polyvector field per aerial vertex");
    if (g.n == 0) throw std::invalid_argument("b_gamma: no aerial vertices");
    const int d = xs[0].dimension();
    for (const auto& x : xs)
        if (x.dimension() != d) throw std::invalid_argument("b_gamma: dimension mismatch");

    MultiDiffOp out(d, g.m);
    for (int k = 0; k < g.n; ++k)
        if (xs[k].degree() != static_cast<int>(g.stars[k].size()))
            return out;     // mismatched degrees contribute nothing

    // Instead of summing over all d^{#E} index maps, walk the stored strictly
    // increasing tuples of each field and their permutations: every other
    // index assignment hits a zero component of the antisymmetric extension.
    std::vector<std::vector<VertexChoice>> options(g.n);
    for (int k = 0; k < g.n; ++k) {
        for (const auto& [idx, coeff] : xs[k].coeffs()) {
            std::vector<int> tuple(idx);
            do {
                VertexChoice c{tuple, inversion_parity(tuple) ? -coeff : coeff};
                options[k].push_back(std::move(c));
            } while (std::next_permutation(tuple.begin(), tuple.end()));
        }
        if (options[k].empty()) return out;
    }

    std::vector<size_t> pick(g.n, 0);
    while (true) {
        // Collect per-vertex and per-ground incoming derivative multi-indices.
        std::vector<MultiIndex> aerial_in(g.n, MultiIndex(d, 0));
        MultiDiffOp::DerivKey ground(g.m, MultiIndex(d, 0));
        for (int k = 0; k < g.n; ++k) {
            const auto& choice = options[k][pick[k]];
            for (size_t e = 0; e < g.stars[k].size(); ++e) {
                int t = g.stars[k][e];
                int axis = choice.indices[e];
                if (t > 0) aerial_in[t - 1][axis - 1] += 1;
                else ground[-t - 1][axis - 1] += 1;
            }
        }
        Poly coeff = Poly::constant(d, Scalar(1));
        for (int k = 0; k < g.n; ++k) {
            coeff = coeff * options[k][pick[k]].coeff.partial_mi(aerial_in[k]);
            if (coeff.is_zero()) break;
        }
        if (!coeff.is_zero()) out.add_term(ground, coeff);

        int k = 0;
        while (k < g.n && ++pick[k] == options[k].size()) pick[k++] = 0;
        if (k == g.n) break;
    }
    return out;
}

} // namespace kq
