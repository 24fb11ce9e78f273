#include "kq/weights.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace kq {

double phi(std::complex<double> p, std::complex<double> q) {
    if (p == q) throw std::domain_error("phi: coincident points");
    double a = std::arg((q - p) / (q - std::conj(p)));
    // std::arg lands on -pi when the imaginary part is a negative zero; fold
    // that onto +pi so the value stays in the documented branch (-pi, pi].
    return a == -M_PI ? M_PI : a;
}

namespace {

/// Gradient of arg(w) with respect to (Re w, Im w).
inline std::array<double, 2> darg(std::complex<double> w) {
    double r2 = std::norm(w);
    return {-w.imag() / r2, w.real() / r2};
}

} // namespace

std::array<double, 4> phi_gradient(std::complex<double> p, std::complex<double> q) {
    if (p == q) throw std::domain_error("phi_gradient: coincident points");
    // phi = arg(w1) - arg(w2), w1 = q - p, w2 = q - conj(p).
    std::complex<double> w1 = q - p, w2 = q - std::conj(p);
    auto d1 = darg(w1), d2 = darg(w2);
    std::array<double, 4> out{};
    out[0] = d1[0] * (-1.0) - d2[0] * (-1.0);                 // d/dRe p
    out[1] = d1[1] * (-1.0) - d2[1] * (+1.0);                 // d/dIm p
    out[2] = d1[0] - d2[0];                                   // d/dRe q
    out[3] = d1[1] - d2[1];                                   // d/dIm q
    return out;
}

namespace {

/// Counter-based per-sample stream (splitmix64): sample i always sees the same
/// numbers no matter how samples are distributed over threads.
struct SampleRng {
    std::uint64_t state;
    SampleRng(std::uint64_t seed, std::uint64_t index)
        : state(seed ^ (index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL)) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
};

int worker_count() {
    if (const char* env = std::getenv("KQ_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc > 8 ? 8 : hc);
}

/// Deterministic chunked reduction: per-chunk partial sums are accumulated in
/// ascending sample order and combined in ascending chunk order, so the result
/// is bit-identical for any worker count.
template <class F>
void mc_accumulate(long long samples, F&& value, double& sum, double& sumsq) {
    constexpr long long kChunk = 1 << 16;
    const long long chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::pair<double, double>> partial(static_cast<size_t>(chunks));
    std::atomic<long long> next_chunk{0};
    auto work = [&] {
        for (;;) {
            long long c = next_chunk.fetch_add(1);
            if (c >= chunks) return;
            double s = 0.0, s2 = 0.0;
            const long long lo = c * kChunk;
            const long long hi = std::min(samples, lo + kChunk);
            for (long long i = lo; i < hi; ++i) {
                double v = value(i);
                s += v;
                s2 += v * v;
            }
            partial[static_cast<size_t>(c)] = {s, s2};
        }
    };
    int workers = worker_count();
    if (workers <= 1 || chunks <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    sum = 0.0;
    sumsq = 0.0;
    for (const auto& [s, s2] : partial) {
        sum += s;
        sumsq += s2;
    }
}

double det_inplace(std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline double tan_map(double u, double& jac) {
    double t = M_PI * (u - 0.5);
    double x = std::tan(t);
    jac *= M_PI * (1.0 + x * x);        // dx/du
    return x;
}

} // namespace

WeightEstimate mc_weight(const AdmissibleGraph& g, long long samples,
                         std::uint64_t seed, const McOptions& opts) {
    g.validate();
    if (g.m != 1 && g.m != 2)
        throw std::invalid_argument("mc_weight: only m in {1,2} is gauge-supported");
    if (samples <= 0) throw std::invalid_argument("mc_weight: need samples > 0");

    WeightEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.graph_key = canonical_key(g);

    const int n = g.n, m = g.m;
    const int E = g.edge_count();
    if (E != 2 * n + m - 2) return est;         // exact structural zero

    // Column layout: (Re p_1, [Im p_1 unless m=1], Re p_2, Im p_2, ..., Re p_n,
    // Im p_n); grounds are all frozen.  col[2k] / col[2k+1] give the column of
    // Re p_k / Im p_k, or -1 when frozen.
    std::vector<int> col(2 * n, -1);
    int ncols = 0;
    for (int k = 0; k < n; ++k) {
        col[2 * k] = ncols++;
        if (!(m == 1 && k == 0)) col[2 * k + 1] = ncols++;
    }
    if (ncols != E)
        throw std::logic_error("mc_weight: gauge dimension mismatch");

    // Class weight: (2pi)^{-#E} int w_G over the gauge slice, attached to one
    // star-ordering representative (summing the star-order orbit of a graph
    // reproduces the per-star factorials, see weights.hpp).  The orientation of
    // the slice is the coordinate order above; it makes the wedge weight +1/2.
    double pref = std::pow(2.0 * M_PI, -E);
    // The m = 1 slice swaps a ground coordinate for Im p_1, reversing the
    // induced orientation; the flip keeps the one-edge weight at +1 = 1/1!
    // (and hence the first-order coefficient equal to the antisymmetrized map).
    if (m == 1) pref = -pref;

    auto value = [&](long long idx) -> double {
        SampleRng rng(seed, static_cast<std::uint64_t>(idx));
        double jac = 1.0;
        std::vector<std::complex<double>> p(n);
        for (int k = 0; k < n; ++k) {
            double x = tan_map(rng.uniform01(), jac);
            double y;
            if (m == 1 && k == 0) {
                y = 1.0;
            } else {
                double v = rng.uniform01();
                y = v / (1.0 - v);
                jac *= 1.0 / ((1.0 - v) * (1.0 - v));
            }
            p[k] = {x, y};
        }
        std::complex<double> ground[2] = {{opts.q1, 0.0}, {opts.q2, 0.0}};
        if (m == 1) ground[0] = {0.0, 0.0};

        std::vector<std::vector<double>> M(E, std::vector<double>(E, 0.0));
        int row = 0;
        for (int k = 0; k < n; ++k)
            for (int t : g.stars[k]) {
                std::complex<double> target = t > 0 ? p[t - 1] : ground[-t - 1];
                auto grad = phi_gradient(p[k], target);
                if (col[2 * k] >= 0) M[row][col[2 * k]] += grad[0];
                if (col[2 * k + 1] >= 0) M[row][col[2 * k + 1]] += grad[1];
                if (t > 0) {
                    if (col[2 * (t - 1)] >= 0) M[row][col[2 * (t - 1)]] += grad[2];
                    if (col[2 * (t - 1) + 1] >= 0) M[row][col[2 * (t - 1) + 1]] += grad[3];
                }
                ++row;
            }
        return pref * det_inplace(M) * jac;
    };

    double sum = 0.0, sumsq = 0.0;
    mc_accumulate(samples, value, sum, sumsq);
    const double N = static_cast<double>(samples);
    est.mean = sum / N;
    if (samples > 1) {
        double var = (sumsq - N * est.mean * est.mean) / (N - 1.0);
        est.std_error = std::sqrt(std::max(var, 0.0) / N);
    }
    return est;
}

std::optional<Rational> analytic_weight(const AdmissibleGraph& g) {
    g.validate();
    auto star_sign_over = [](const std::vector<int>& star, int m) -> std::optional<int> {
        // star must be a permutation of (-1,...,-m); returns its parity sign.
        if (static_cast<int>(star.size()) != m) return std::nullopt;
        std::vector<bool> seen(m, false);
        int inv = 0;
        for (size_t i = 0; i < star.size(); ++i) {
            if (star[i] > 0 || star[i] < -m || seen[-star[i] - 1]) return std::nullopt;
            seen[-star[i] - 1] = true;
            for (size_t j = i + 1; j < star.size(); ++j)
                if (-star[i] > -star[j]) ++inv;
        }
        return inv % 2 == 0 ? 1 : -1;
    };

    if (g.m == 2 && g.n >= 1) {
        // Moyal family: every aerial vertex points at both grounds.
        Rational w(1);
        int sign = 1;
        bool all = true;
        for (const auto& star : g.stars) {
            auto s = star_sign_over(star, 2);
            if (!s) {
                all = false;
                break;
            }
            sign *= *s;
            w /= 2;
        }
        if (all) return sign > 0 ? w : -w;
    }
    if (g.n == 1 && g.m >= 1) {
        // Single aerial vertex splitting into all grounds: W = 1/m!.
        auto s = star_sign_over(g.stars[0], g.m);
        if (s) {
            Rational w(1);
            for (int j = 2; j <= g.m; ++j) w /= j;
            return *s > 0 ? w : -w;
        }
    }
    return std::nullopt;
}

WeightEstimate vanishing_check(const AdmissibleGraph& g, long long samples,
                               std::uint64_t seed) {
    g.validate();
    if (g.m != 0 || (g.n != 2 && g.n != 3))
        throw std::invalid_argument("vanishing_check: need m = 0 and n in {2,3}");
    if (samples <= 0) throw std::invalid_argument("vanishing_check: need samples > 0");

    WeightEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.graph_key = canonical_key(g);

    const int n = g.n;
    const int E = g.edge_count();
    if (E != 2 * n - 3) return est;             // dimension mismatch: exact 0

    // Gauge for C_n (points in the plane modulo translation and scaling):
    // p_1 = 0, p_2 = e^{i theta}; p_3 free.  Unknowns: theta, then (x_3, y_3).
    auto eval_det = [&](double theta, std::complex<double> p3) -> double {
        std::vector<std::complex<double>> p(n);
        p[0] = {0.0, 0.0};
        p[1] = std::polar(1.0, theta);
        if (n == 3) p[2] = p3;
        const std::complex<double> dp2 = std::complex<double>(0.0, 1.0) * p[1];

        std::vector<std::vector<double>> M(E, std::vector<double>(E, 0.0));
        int row = 0;
        for (int k = 0; k < n; ++k)
            for (int t : g.stars[k]) {
                std::complex<double> w = p[t - 1] - p[k];
                auto d = darg(w);
                // Column 0: theta; columns 1,2: (x_3, y_3).
                double dw_dtheta = 0.0;
                if (k == 1) dw_dtheta -= 1.0;
                if (t == 2) dw_dtheta += 1.0;
                M[row][0] = dw_dtheta * (d[0] * dp2.real() + d[1] * dp2.imag());
                if (n == 3) {
                    double s3 = (t == 3 ? 1.0 : 0.0) - (k == 2 ? 1.0 : 0.0);
                    M[row][1] = s3 * d[0];
                    M[row][2] = s3 * d[1];
                }
                ++row;
            }
        return det_inplace(M);
    };

    // Importance density for p_3: equal-weight mixture of two radial
    // half-Cauchy clouds centred on the gauge-fixed vertices.  Near either
    // vertex the density behaves like 1/r, matching the d arg edge
    // singularity, and at infinity like 1/r^3, matching the decay of the
    // integrand; the importance weights stay bounded.
    const double kScale = 0.5;
    auto cloud = [&](std::complex<double> w) -> double {
        double r = std::abs(w);
        return kScale / (M_PI * M_PI * r * (kScale * kScale + r * r));
    };

    auto value = [&](long long idx) -> double {
        SampleRng rng(seed, static_cast<std::uint64_t>(idx));
        double theta = 2.0 * M_PI * rng.uniform01();
        const double jac = 2.0 * M_PI;          // d p_2 / d theta via theta = 2 pi u
        if (n == 2) return eval_det(theta, {0.0, 0.0}) * jac;

        const std::complex<double> p1(0.0, 0.0);
        const std::complex<double> p2 = std::polar(1.0, theta);
        std::complex<double> centre = (rng.next() & 1) ? p2 : p1;
        double phi = 2.0 * M_PI * rng.uniform01();
        double r = kScale * std::tan(0.5 * M_PI * rng.uniform01());
        std::complex<double> off = std::polar(r, phi);
        // Antithetic pair phi <-> phi + pi: the singular edge rows are odd in
        // the offset direction near each vertex, so the pair cancels the
        // dominant fluctuation.
        double v = 0.0;
        for (std::complex<double> p3 : {centre + off, centre - off}) {
            double rho = 0.5 * (cloud(p3 - p1) + cloud(p3 - p2));
            v += 0.5 * eval_det(theta, p3) / rho;
        }
        return v * jac;
    };

    double sum = 0.0, sumsq = 0.0;
    mc_accumulate(samples, value, sum, sumsq);
    const double N = static_cast<double>(samples);
    est.mean = sum / N;
    if (samples > 1) {
        double var = (sumsq - N * est.mean * est.mean) / (N - 1.0);
        est.std_error = std::sqrt(std::max(var, 0.0) / N);
    }
    return est;
}

} // namespace kq
