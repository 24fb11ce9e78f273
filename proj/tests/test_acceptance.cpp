/*
 * Acceptance suite: one pass/fail line per criterion, pinned tolerances.
 * Run through ctest or directly; the exit code is the number of failures.
 */
#include "kq/hochschild.hpp"
#include "kq/json_io.hpp"
#include "kq/polyvector.hpp"
#include "kq/star.hpp"
#include "kq/weights.hpp"
#include "kq/weyl.hpp"

#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace kq;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool ok, double seconds) {
    std::printf("[%s] %2d. %s  (%.2f s)\n", ok ? "PASS" : "FAIL", number, what.c_str(),
                seconds);
    if (!ok) ++g_failures;
}

void run(int number, const std::string& what, double time_limit,
         const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("       criterion %d threw: %s\n", number, e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0.0 && secs > time_limit) ok = false;
    report(number, what, ok, secs);
}

PolyVectorField so3() {
    PolyVectorField pi(3, 2);
    pi.add_component({1, 2}, Poly::variable(3, 3));
    pi.add_component({2, 3}, Poly::variable(3, 1));
    pi.add_component({3, 1}, Poly::variable(3, 2));
    return pi;
}

/// Full antisymmetric first-order pairing of a bivector as an operator.
MultiDiffOp pairing_op(const PolyVectorField& pi) {
    const int d = pi.dimension();
    MultiDiffOp P(d, 2);
    for (const auto& [idx, c] : pi.coeffs()) {
        MultiIndex ei(d, 0), ej(d, 0);
        ei[idx[0] - 1] = 1;
        ej[idx[1] - 1] = 1;
        P.add_term({ei, ej}, c);
        P.add_term({ej, ei}, -c);
    }
    return P;
}

/// Coefficientwise n-th contraction power of a bidifferential operator.
MultiDiffOp op_power(const MultiDiffOp& P, int n) {
    MultiDiffOp out = mu(P.dimension());
    for (int k = 0; k < n; ++k) {
        MultiDiffOp next(P.dimension(), 2);
        for (const auto& [ka, ca] : out.terms())
            for (const auto& [kb, cb] : P.terms())
                next.add_term({mi_add(ka[0], kb[0]), mi_add(ka[1], kb[1])}, ca * cb);
        out = next;
    }
    return out;
}

/// Closed-form expansion oracle for constant bivectors: the assembled series
/// must equal mu + sum_n hbar^n/(2^n n!) P^n coefficientwise.
bool matches_closed_form(const PolyVectorField& pi, int N) {
    StarProduct s = assemble(pi, N, WeightSource::analytic_only());
    MultiDiffOp P = pairing_op(pi);
    if (!(s.terms.at(0) == mu(pi.dimension()))) return false;
    Rational denom(1);
    for (int n = 1; n <= N; ++n) {
        denom *= 2 * n;
        if (!(s.terms.at(n) == op_power(P, n).scaled(Scalar(Rational(1) / denom))))
            return false;
    }
    return true;
}

/// Definition-based Schouten bracket on decomposables (independent oracle).
PolyVectorField lie_bracket_vf(const PolyVectorField& X, const PolyVectorField& Y) {
    const int d = X.dimension();
    PolyVectorField r(d, 1);
    for (int j = 1; j <= d; ++j) {
        Poly cj(d);
        for (int i = 1; i <= d; ++i)
            cj += X.component({i}) * Y.component({j}).partial(i) -
                  Y.component({i}) * X.component({j}).partial(i);
        r.add_component({j}, cj);
    }
    return r;
}

PolyVectorField sn_oracle(const std::vector<PolyVectorField>& xs,
                          const std::vector<PolyVectorField>& ys) {
    const int d = xs[0].dimension();
    const int p = static_cast<int>(xs.size()), q = static_cast<int>(ys.size());
    PolyVectorField acc(d, p + q - 1);
    for (int r = 1; r <= p; ++r)
        for (int s = 1; s <= q; ++s) {
            PolyVectorField term = lie_bracket_vf(xs[r - 1], ys[s - 1]);
            for (int t = 1; t <= p; ++t)
                if (t != r) term = wedge(term, xs[t - 1]);
            for (int t = 1; t <= q; ++t)
                if (t != s) term = wedge(term, ys[t - 1]);
            acc += ((r + s) % 2 == 0) ? term : -term;
        }
    return acc;
}

int sgn(int e) { return e % 2 == 0 ? 1 : -1; }

} // namespace

int main() {
    // 1. Constant antisymmetric bivectors on R^2 and R^4: assembled star with
    //    analytic weights equals the closed-form expansion through hbar^3,
    //    exactly.
    run(1, "constant-coefficient star equals the closed-form expansion (R^2, R^4, exact)",
        10.0, [] {
            PolyVectorField p2(2, 2);
            p2.add_component({1, 2}, Poly::constant(2, Scalar(1)));
            PolyVectorField p4(4, 2);
            p4.add_component({1, 2}, Poly::constant(4, Scalar(1)));
            p4.add_component({3, 4}, Poly::constant(4, Scalar(2)));
            p4.add_component({1, 3}, Poly::constant(4, Scalar::from_fraction(1, 3)));
            return matches_closed_form(p2, 3) && matches_closed_form(p4, 3);
        });

    // 2. Wedge weight: 0.5 within 3 sigma, sigma < 0.01 at 10^6 samples.
    run(2, "wedge weight 0.5 within 3 sigma, sigma < 0.01, 10^6 samples", 60.0, [] {
        AdmissibleGraph wedge{1, 2, {{-1, -2}}};
        WeightEstimate est = mc_weight(wedge, 1000000, 7);
        std::printf("       wedge: mean=%.6f sigma=%.6f\n", est.mean, est.std_error);
        return est.std_error < 0.01 && std::fabs(est.mean - 0.5) <= 3.0 * est.std_error;
    });

    // 3. First-order family weights 1/2 and 1/6; m = 2 confirmed by MC.
    run(3, "split-family weights 1/2 (m=2) and 1/6 (m=3), m=2 confirmed by MC", 60.0, [] {
        AdmissibleGraph g2{1, 2, {{-1, -2}}};
        AdmissibleGraph g3{1, 3, {{-1, -2, -3}}};
        auto w2 = analytic_weight(g2);
        auto w3 = analytic_weight(g3);
        if (!w2 || *w2 != Rational(1, 2)) return false;
        if (!w3 || *w3 != Rational(1, 6)) return false;
        WeightEstimate est = mc_weight(g2, 400000, 13);
        return std::fabs(est.mean - 0.5) <= 3.0 * est.std_error;
    });

    // 4. Operator-ordering no-go: the nested-commutator combination that
    //    vanishes classically leaves exactly -3 (i hbar)^2 times the identity,
    //    and the bracket correspondence is exact on the low-degree sector.
    run(4, "no-go residual -3(i hbar)^2 id; exact bracket correspondence deg<=2 x deg<=5",
        30.0, [] {
            GroenewoldReport rep = groenewold_residual();
            if (!rep.poisson_side.is_zero()) return false;
            if (!(rep.operator_side == WeylOp::identity(1).scaled_hbar(Scalar(-3), 2)))
                return false;
            for (int fa = 0; fa <= 2; ++fa)
                for (int fb = 0; fa + fb <= 2; ++fb)
                    for (int ga = 0; ga <= 5; ++ga)
                        for (int gb = 0; ga + gb <= 5; ++gb) {
                            Poly f = Poly::monomial(2, {fa, fb}, Scalar(1));
                            Poly g = Poly::monomial(2, {ga, gb}, Scalar(1));
                            WeylOp lhs = commutator(weyl_quantize(f, 1), weyl_quantize(g, 1));
                            WeylOp rhs = weyl_quantize(poisson_canonical(f, g, 1), 1)
                                             .scaled_hbar(Scalar::i(), 1);
                            if (!(lhs == rhs)) return false;
                        }
            return true;
        });

    // 5. DGLA property suite, 500 random cases per property, exact.
    run(5, "DGLA suite: delta^2, d_H=[mu,-], Jacobi+Leibniz both brackets, SN oracle (500 each)",
        120.0, [] {
            kqtest::Rng rng(20260825);
            for (int round = 0; round < 500; ++round) {
                int d = kqtest::uniform(rng, 1, 3);
                MultiDiffOp f = kqtest::random_op(rng, d, kqtest::uniform(rng, 0, 3), 1, 2, 1);
                if (!hochschild_delta(hochschild_delta(f)).is_zero()) return false;
                if (!modified_d(modified_d(f)).is_zero()) return false;
                if (!(modified_d(f) == gerstenhaber_bracket(mu(d), f))) return false;
            }
            for (int round = 0; round < 500; ++round) {
                int d = kqtest::uniform(rng, 1, 2);
                MultiDiffOp x = kqtest::random_op(rng, d, kqtest::uniform(rng, 1, 2), 1, 1, 1);
                MultiDiffOp y = kqtest::random_op(rng, d, kqtest::uniform(rng, 1, 2), 1, 1, 1);
                MultiDiffOp z = kqtest::random_op(rng, d, kqtest::uniform(rng, 1, 2), 1, 1, 1);
                int p = x.degree(), q = y.degree(), r = z.degree();
                MultiDiffOp jac =
                    gerstenhaber_bracket(x, gerstenhaber_bracket(y, z)).scaled(Scalar(sgn(p * r))) +
                    gerstenhaber_bracket(y, gerstenhaber_bracket(z, x)).scaled(Scalar(sgn(q * p))) +
                    gerstenhaber_bracket(z, gerstenhaber_bracket(x, y)).scaled(Scalar(sgn(r * q)));
                if (!jac.is_zero()) return false;
                MultiDiffOp lhs = modified_d(gerstenhaber_bracket(x, y));
                MultiDiffOp rhs = gerstenhaber_bracket(modified_d(x), y) +
                                  gerstenhaber_bracket(x, modified_d(y)).scaled(Scalar(sgn(p)));
                if (!(lhs == rhs)) return false;
            }
            for (int round = 0; round < 500; ++round) {
                const int d = 3;
                PolyVectorField X = kqtest::random_polyvector(rng, d, kqtest::uniform(rng, 1, 3), 1, 1);
                PolyVectorField Y = kqtest::random_polyvector(rng, d, kqtest::uniform(rng, 1, 3), 1, 1);
                PolyVectorField Z = kqtest::random_polyvector(rng, d, kqtest::uniform(rng, 1, 2), 1, 1);
                int p = X.shifted_degree(), q = Y.shifted_degree(), r = Z.shifted_degree();
                PolyVectorField jac =
                    schouten_nijenhuis(X, schouten_nijenhuis(Y, Z)).scaled(Scalar(sgn(p * r))) +
                    schouten_nijenhuis(Y, schouten_nijenhuis(Z, X)).scaled(Scalar(sgn(q * p))) +
                    schouten_nijenhuis(Z, schouten_nijenhuis(X, Y)).scaled(Scalar(sgn(r * q)));
                if (!jac.is_zero()) return false;
                int pt = X.degree(), qt = Y.degree();
                PolyVectorField lhs = schouten_nijenhuis(X, wedge(Y, Z));
                PolyVectorField rhs = wedge(schouten_nijenhuis(X, Y), Z) +
                                      wedge(Y, schouten_nijenhuis(X, Z))
                                          .scaled(Scalar(sgn((pt - 1) * qt)));
                if (!(lhs == rhs)) return false;
            }
            for (int round = 0; round < 500; ++round) {
                const int d = 3;
                int p = kqtest::uniform(rng, 1, 2), q = kqtest::uniform(rng, 1, 2);
                std::vector<PolyVectorField> xs, ys;
                for (int t = 0; t < p; ++t) xs.push_back(kqtest::random_polyvector(rng, d, 1, 1, 1));
                for (int t = 0; t < q; ++t) ys.push_back(kqtest::random_polyvector(rng, d, 1, 1, 1));
                PolyVectorField X = xs[0], Y = ys[0];
                for (int t = 1; t < p; ++t) X = wedge(X, xs[t]);
                for (int t = 1; t < q; ++t) Y = wedge(Y, ys[t]);
                // the diamond-built bracket must agree with the classical
                // decomposable definition
                if (!(schouten_nijenhuis(X, Y) == sn_oracle(xs, ys))) return false;
            }
            return true;
        });

    // 6. Maurer-Cartan residual equals the associator of mu + B.
    run(6, "mc_residual(B) == associator of mu+B order-by-order, 100 random B at N=2",
        60.0, [] {
            kqtest::Rng rng(1618);
            const int N = 2;
            for (int round = 0; round < 100; ++round) {
                int d = kqtest::uniform(rng, 1, 2);
                OpSeries B(N, MultiDiffOp::zero(d, 2));
                for (int k = 1; k <= N; ++k) B.set(k, kqtest::random_op(rng, d, 2, 2, 2, 1));
                OpSeries res = mc_residual(B);
                OpSeries star(N, MultiDiffOp::zero(d, 2));
                star.set(0, mu(d));
                star = star + B;
                auto left = OpSeries::convolve(star, star,
                    [](const MultiDiffOp& a, const MultiDiffOp& b) {
                        return gerstenhaber_insert(a, b, 0);
                    }, MultiDiffOp::zero(d, 3));
                auto right = OpSeries::convolve(star, star,
                    [](const MultiDiffOp& a, const MultiDiffOp& b) {
                        return gerstenhaber_insert(a, b, 1);
                    }, MultiDiffOp::zero(d, 3));
                OpSeries assoc = left - right;
                for (int k = 0; k <= N; ++k)
                    if (!(res.at(k) == assoc.at(k))) return false;
            }
            return true;
        });

    // 7. so(3) first-order bracket recovery and gauge invariance.
    run(7, "first_order_bracket(assemble(so3,1)) == so3; invariant under 20 random gauges",
        60.0, [] {
            StarProduct s = assemble(so3(), 1, WeightSource::analytic_only());
            if (!(first_order_bracket(s) == so3())) return false;
            kqtest::Rng rng(271828);
            for (int round = 0; round < 20; ++round) {
                OpSeries gen(1, MultiDiffOp(3, 1));
                gen.set(1, kqtest::random_op(rng, 3, 1, 2, 2, 1));
                StarProduct sp = gauge_transform(s, GaugeElement(gen));
                if (!(first_order_bracket(sp) == so3())) return false;
            }
            return true;
        });

    // 8. The symmetrization map lands in the kernel of the differential.
    run(8, "d_H(hkr(X)) == 0 for 200 random polyvector fields", 60.0, [] {
        kqtest::Rng rng(41);
        for (int round = 0; round < 200; ++round) {
            int d = kqtest::uniform(rng, 2, 3);
            int k = kqtest::uniform(rng, 0, 3);
            if (!modified_d(hkr(kqtest::random_polyvector(rng, d, k))).is_zero()) return false;
        }
        return true;
    });

    // 9. Triangle vanishing spot-check: 0 within 3 sigma, sigma < 0.05.
    run(9, "C3 triangle integral 0 within 3 sigma, sigma < 0.05, 10^6 samples", 60.0, [] {
        AdmissibleGraph tri{3, 0, {{2}, {3}, {1}}};
        WeightEstimate est = vanishing_check(tri, 1000000, 11);
        std::printf("       triangle: mean=%.6f sigma=%.6f\n", est.mean, est.std_error);
        return est.std_error < 0.05 && std::fabs(est.mean) <= 3.0 * est.std_error;
    });

    // 10. Low-order formality constraints: n = 1 exact, n = 2 within the
    //     propagated Monte-Carlo error (substitute for the full theorem).
    run(10, "formality residual: n=1 exact; n=2 |residual| <= 3 propagated sigma", 120.0, [] {
        kqtest::Rng rng(97);
        std::vector<Poly> fs{Poly::variable(3, 1) * Poly::variable(3, 1),
                             Poly::variable(3, 2) * Poly::variable(3, 3),
                             Poly::variable(3, 1)};
        FormalityReport r1 = formality_residual(1, {so3()}, fs, WeightSource::analytic_only());
        if (r1.residual >= 1e-12 || r1.std_error != 0.0) return false;
        FormalityReport r1b = formality_residual(
            1, {kqtest::random_polyvector(rng, 3, 2, 2)}, fs, WeightSource::analytic_only());
        if (r1b.residual >= 1e-12) return false;
        FormalityReport r2 =
            formality_residual(2, {so3(), so3()}, fs, WeightSource::monte_carlo(300000, 47));
        std::printf("       n=2: residual=%.6g sigma=%.6g\n", r2.residual, r2.std_error);
        return r2.std_error > 0.0 && r2.residual <= 3.0 * r2.std_error;
    });

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures;
}
