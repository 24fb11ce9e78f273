#include "kq/star.hpp"

#include <cmath>
#include <complex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kq {

namespace {

/// Star-order class representatives of G_{n,m} with the given out-degrees.
std::vector<AdmissibleGraph> class_reps(int n, int m, const std::vector<int>& out_degrees) {
    std::vector<AdmissibleGraph> reps;
    if (n < 1 || m < 1) return reps;
    std::set<std::string> seen;
    for (auto& g : enumerate_graphs(n, m, out_degrees))
        if (seen.insert(star_order_key(g)).second) reps.push_back(std::move(g));
    return reps;
}

struct ResolvedWeight {
    double mean = 0.0;
    double sigma = 0.0;
    bool analytic = false;
};

/// Preference order: closed form, then table entry, then (for the
/// monte_carlo kind) a fresh estimate seeded per graph.
ResolvedWeight resolve_weight(const AdmissibleGraph& g, const WeightSource& src,
                              std::uint64_t& seed_offset) {
    if (auto w = analytic_weight(g)) return {w->get_d(), 0.0, true};
    auto it = src.table.find(star_order_key(g));
    if (it != src.table.end()) return {it->second.get_d(), 0.0, false};
    if (src.kind == WeightSource::Kind::monte_carlo) {
        WeightEstimate est = mc_weight(g, src.samples, src.seed + seed_offset++);
        return {est.mean, est.std_error, false};
    }
    throw std::runtime_error("no weight available for graph " + star_order_key(g));
}

Scalar i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

double poly_max_coeff(const Poly& p) {
    double m = 0.0;
    for (const auto& [mi, c] : p.terms()) m = std::max(m, c.magnitude());
    return m;
}

double op_max_coeff(const MultiDiffOp& f) {
    double m = 0.0;
    for (const auto& [key, c] : f.terms()) m = std::max(m, poly_max_coeff(c));
    return m;
}

/// All monomials x^e with total degree <= deg.
std::vector<Poly> monomial_basis(int d, int deg) {
    std::vector<Poly> out;
    MultiIndex e(d, 0);
    while (true) {
        if (mi_total(e) <= deg) out.push_back(Poly::monomial(d, e, Scalar(1)));
        int j = 0;
        while (j < d && ++e[j] > deg) e[j++] = 0;
        if (j == d) break;
    }
    return out;
}

} // namespace

HbarSeries<Poly> StarProduct::product(const Poly& f, const Poly& g) const {
    const int N = terms.truncation_order();
    HbarSeries<Poly> out(N, Poly::zero(dimension()));
    for (int k = 0; k <= N; ++k) out.set(k, terms.at(k).apply({f, g}));
    return out;
}

StarProduct assemble(const PolyVectorField& pi, int N, const WeightSource& source) {
    if (pi.degree() != 2) throw std::invalid_argument("assemble: need a bivector");
    if (N < 0 || N > 3)
        throw std::invalid_argument("assemble: order must be between 0 and 3");
    if (!is_poisson(pi).poisson)
        throw std::invalid_argument("assemble: bivector is not Poisson");

    const int d = pi.dimension();
    StarProduct s{OpSeries(N, MultiDiffOp(d, 2)), {}};
    s.terms.set(0, mu(d));

    std::uint64_t seed_offset = 0;
    Rational fact(1);
    for (int n = 1; n <= N; ++n) {
        fact *= n;
        std::vector<PolyVectorField> copies(n, pi);
        MultiDiffOp coeff(d, 2);
        for (const auto& g : class_reps(n, 2, std::vector<int>(n, 2))) {
            MultiDiffOp B = b_gamma(g, copies);
            if (B.is_zero()) continue;
            ResolvedWeight w = resolve_weight(g, source, seed_offset);
            coeff += B.scaled(Scalar(rational_from_double(w.mean)));
            s.provenance.push_back({n, star_order_key(g), w.mean, w.sigma, w.analytic});
        }
        s.terms.set(n, coeff.scaled(Scalar(Rational(1) / fact)));
    }
    return s;
}

PolyVectorField first_order_bracket(const StarProduct& s) {
    if (s.order() < 1)
        throw std::invalid_argument("first_order_bracket: order-0 product");
    const int d = s.dimension();
    MultiDiffOp a = s.terms.at(1);
    MultiDiffOp anti = a - a.swapped_args(0, 1);
    PolyVectorField pi(d, 2);
    for (const auto& [key, c] : anti.terms()) {
        if (mi_total(key[0]) != 1 || mi_total(key[1]) != 1) continue;
        int i = 0, j = 0;
        for (int ax = 0; ax < d; ++ax) {
            if (key[0][ax]) i = ax + 1;
            if (key[1][ax]) j = ax + 1;
        }
        if (i < j) pi.add_component({i, j}, c);
    }
    return pi;
}

std::string AssociativityReport::to_string() const {
    std::ostringstream os;
    if (associative) {
        os << "associative up to truncation (max violation 0)";
    } else {
        os << "associativity fails first at hbar^" << first_violation_order
           << ", max violating coefficient " << max_violation;
    }
    return os.str();
}

AssociativityReport verify_associativity(const StarProduct& s, int max_monomial_degree,
                                         int depth) {
    const int d = s.dimension();
    const int N = s.order();
    const int D = depth < 0 ? N : depth;
    auto term_at = [&](int k) { return k <= N ? s.terms.at(k) : MultiDiffOp(d, 2); };

    OpSeries dev(D, MultiDiffOp(d, 2));
    dev.set(0, s.terms.at(0) - mu(d));
    for (int k = 1; k <= std::min(N, D); ++k) dev.set(k, s.terms.at(k));

    AssociativityReport rep{mc_residual(dev)};
    auto note = [&rep](int order, double v) {
        if (v <= 0.0) return;
        rep.associative = false;
        rep.max_violation = std::max(rep.max_violation, v);
        if (rep.first_violation_order < 0 || order < rep.first_violation_order)
            rep.first_violation_order = order;
    };
    for (int k = 0; k <= D; ++k) note(k, op_max_coeff(rep.residual.at(k)));

    // Independent sweep: the associator on every monomial triple.
    std::vector<Poly> basis = monomial_basis(d, max_monomial_degree);
    for (const Poly& f : basis)
        for (const Poly& g : basis) {
            HbarSeries<Poly> fg(D, Poly::zero(d));
            for (int k = 0; k <= D; ++k) fg.set(k, term_at(k).apply({f, g}));
            for (const Poly& h : basis) {
                HbarSeries<Poly> gh(D, Poly::zero(d));
                for (int k = 0; k <= D; ++k) gh.set(k, term_at(k).apply({g, h}));
                for (int k = 0; k <= D; ++k) {
                    Poly assoc(d);
                    for (int l = 0; l <= k; ++l) {
                        assoc += term_at(k - l).apply({fg.at(l), h});
                        assoc -= term_at(k - l).apply({f, gh.at(l)});
                    }
                    note(k, poly_max_coeff(assoc));
                }
            }
        }
    return rep;
}

StarProduct gauge_transform(const StarProduct& s, const GaugeElement& phi) {
    const int d = s.dimension();
    const int N = s.order();
    OpSeries dev(N, MultiDiffOp(d, 2));
    dev.set(0, s.terms.at(0) - mu(d));
    for (int k = 1; k <= N; ++k) dev.set(k, s.terms.at(k));
    OpSeries out = gauge_act(phi, dev);
    out.set(0, out.at(0) + mu(d));
    return StarProduct{out, s.provenance};
}

StarProduct substitute_i_hbar(const StarProduct& s) {
    OpSeries out(s.order(), MultiDiffOp(s.dimension(), 2));
    for (int k = 0; k <= s.order(); ++k) out.set(k, s.terms.at(k).scaled(i_pow(k)));
    return StarProduct{out, s.provenance};
}

// --- formality residual ----------------------------------------------------

namespace {

struct Part {
    double w;
    double sigma;
    MultiDiffOp op;
};

/// The graph coefficient at Taylor order xs.size() as a list of weighted
/// operators (one per star-order class); the empty input gives the bare
/// multiplication.  The arity is forced by the degree count.
std::vector<Part> u_parts(int d, const std::vector<PolyVectorField>& xs,
                          const WeightSource& src, std::uint64_t& seed_offset) {
    if (xs.empty()) return {Part{1.0, 0.0, mu(d)}};
    const int n = static_cast<int>(xs.size());
    std::vector<int> degs;
    int total = 0;
    for (const auto& x : xs) {
        degs.push_back(x.degree());
        total += x.degree();
    }
    const int arity = total - 2 * n + 2;
    std::vector<Part> parts;
    if (arity < 1) return parts;
    for (const auto& g : class_reps(n, arity, degs)) {
        MultiDiffOp B = b_gamma(g, xs);
        if (B.is_zero()) continue;
        ResolvedWeight w = resolve_weight(g, src, seed_offset);
        parts.push_back({w.mean, w.sigma, std::move(B)});
    }
    return parts;
}

/// Numeric polynomial with per-coefficient variance, for propagating the
/// Monte-Carlo weight errors through linear combinations of exact operators.
struct StochPoly {
    std::map<MultiIndex, std::complex<double>> mean;
    std::map<MultiIndex, double> var;

    void accumulate(const Poly& p, double scale, double w, double sw) {
        for (const auto& [mi, c] : p.terms()) {
            std::complex<double> z(c.re.get_d(), c.im.get_d());
            mean[mi] += scale * w * z;
            var[mi] += scale * scale * sw * sw * std::norm(z);
        }
    }
};

} // namespace

FormalityReport formality_residual(int n, const std::vector<PolyVectorField>& xs,
                                   const std::vector<Poly>& fs, const WeightSource& source) {
    if (n < 1 || n > 2) throw std::invalid_argument("formality_residual: n must be 1 or 2");
    if (static_cast<int>(xs.size()) != n)
        throw std::invalid_argument("formality_residual: need n polyvectors");
    const int m = 2;
    if (static_cast<int>(fs.size()) != m + 1)
        throw std::invalid_argument("formality_residual: need three test polynomials");
    const int d = xs[0].dimension();

    std::vector<int> degs;
    for (const auto& x : xs) degs.push_back(x.degree());
    std::uint64_t seed_offset = 0;

    // Diamond side: sum over ordered pairs (i,j) of the order-(n-1)
    // coefficient on (x_i <> x_j, rest).
    StochPoly lhs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            std::vector<int> sigma(n);
            for (int k = 0; k < n; ++k) sigma[k] = k;
            std::swap(sigma[0], sigma[std::min(i, j) - 1]);
            std::swap(sigma[1], sigma[std::max(i, j) - 1]);
            int eps = koszul_sign_sym(degs, sigma);
            std::vector<PolyVectorField> args{diamond(xs[i - 1], xs[j - 1])};
            for (int k = 1; k <= n; ++k)
                if (k != i && k != j) args.push_back(xs[k - 1]);
            for (const Part& p : u_parts(d, args, source, seed_offset)) {
                if (p.op.arity() != m + 1) continue;
                lhs.accumulate(p.op.apply(fs), eps, p.w, p.sigma);
            }
        }

    // Composition side: one coefficient inserted into another over all
    // shuffle splits and insertion positions.
    StochPoly rhs;
    std::map<std::vector<int>, std::vector<Part>> cache;
    auto parts_for = [&](const std::vector<int>& idx) -> const std::vector<Part>& {
        auto it = cache.find(idx);
        if (it != cache.end()) return it->second;
        std::vector<PolyVectorField> sub;
        for (int k : idx) sub.push_back(xs[k]);
        return cache.emplace(idx, u_parts(d, sub, source, seed_offset)).first->second;
    };
    for (int i = 0; i <= n; ++i)
        for (const auto& sigma : shuffles(i, n)) {
            int eps = koszul_sign_sym(degs, sigma);
            std::vector<int> outer_idx(sigma.begin(), sigma.begin() + i);
            std::vector<int> inner_idx(sigma.begin() + i, sigma.end());
            const auto& outer = parts_for(outer_idx);
            const auto& inner = parts_for(inner_idx);
            if (outer.empty() || inner.empty()) continue;
            const int a_in = inner[0].op.arity();
            const int a_out = outer[0].op.arity();
            const int j = a_in - 1;
            if (j < -1 || j > m || a_out != m - j + 1) continue;
            for (int k = 0; k + j <= m && k <= m + 1; ++k) {
                // (-1)^{j(k+m)}; for the arity-0 insertion j = -1 this is
                // the parity of k + m.
                int sign = ((std::abs(j) * (k + m)) % 2 == 0) ? 1 : -1;
                for (const Part& po : outer)
                    for (const Part& pi : inner) {
                        std::vector<Poly> in_args(fs.begin() + k, fs.begin() + k + j + 1);
                        Poly inserted = pi.op.apply(in_args);
                        std::vector<Poly> out_args(fs.begin(), fs.begin() + k);
                        out_args.push_back(inserted);
                        for (int t = j + k + 1; t <= m; ++t) out_args.push_back(fs[t]);
                        Poly p = po.op.apply(out_args);
                        double scale = eps * sign;
                        for (const auto& [mi, c] : p.terms()) {
                            std::complex<double> z(c.re.get_d(), c.im.get_d());
                            rhs.mean[mi] += scale * po.w * pi.w * z;
                            rhs.var[mi] += scale * scale * std::norm(z) *
                                           (po.w * po.w * pi.sigma * pi.sigma +
                                            pi.w * pi.w * po.sigma * po.sigma);
                        }
                    }
            }
        }

    FormalityReport rep;
    std::set<MultiIndex> keys;
    for (const auto& [mi, z] : lhs.mean) keys.insert(mi);
    for (const auto& [mi, z] : rhs.mean) keys.insert(mi);
    for (const auto& mi : keys) {
        auto get = [&](const std::map<MultiIndex, std::complex<double>>& mp) {
            auto it = mp.find(mi);
            return it == mp.end() ? std::complex<double>(0.0) : it->second;
        };
        auto getv = [&](const std::map<MultiIndex, double>& mp) {
            auto it = mp.find(mi);
            return it == mp.end() ? 0.0 : it->second;
        };
        double diff = std::abs(get(lhs.mean) - get(rhs.mean));
        if (diff > rep.residual) {
            rep.residual = diff;
            rep.std_error = std::sqrt(getv(lhs.var) + getv(rhs.var));
        }
    }
    return rep;
}

} // namespace kq
