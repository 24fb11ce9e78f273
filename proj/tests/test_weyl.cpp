#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kq/weyl.hpp"
#include "test_util.hpp"

using namespace kq;

namespace {

using PolySeries = HbarSeries<Poly>;
using Pi = std::vector<std::vector<Scalar>>;

/// Standard symplectic structure on variables (q1..qn, p1..pn): {q_i, p_i} = 1.
Pi symplectic(int n) {
    Pi pi(2 * n, std::vector<Scalar>(2 * n, Scalar(0)));
    for (int i = 0; i < n; ++i) {
        pi[i][n + i] = Scalar(1);
        pi[n + i][i] = Scalar(-1);
    }
    return pi;
}

Scalar half_i_pow(int k) {
    // (-i/2)^k
    Scalar c(Rational(1));
    for (int j = 0; j < k; ++j) c = c * Scalar(Rational(-1, 2)) * Scalar::i();
    return c;
}

Rational binom(int n, int k) {
    Rational r(1);
    for (int j = 1; j <= k; ++j) r *= Rational(n - j + 1, j);
    return r;
}

/// Extend the two-argument Moyal product to a series left factor.
PolySeries star_right(const PolySeries& a, const Poly& h, const Pi& pi, int N) {
    PolySeries out(N, Poly::zero(h.dimension()));
    for (int k = 0; k <= a.truncation_order() && k <= N; ++k) {
        if (a.at(k).is_zero()) continue;
        PolySeries m = moyal_product(a.at(k), h, pi, N);
        for (int j = 0; j + k <= N; ++j) out.add_at(k + j, m.at(j));
    }
    return out;
}

PolySeries star_left(const Poly& f, const PolySeries& a, const Pi& pi, int N) {
    PolySeries out(N, Poly::zero(f.dimension()));
    for (int k = 0; k <= a.truncation_order() && k <= N; ++k) {
        if (a.at(k).is_zero()) continue;
        PolySeries m = moyal_product(f, a.at(k), pi, N);
        for (int j = 0; j + k <= N; ++j) out.add_at(k + j, m.at(j));
    }
    return out;
}

} // namespace

TEST_CASE("canonical commutation relations") {
    for (int n : {1, 3}) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                WeylOp qi = WeylOp::q_hat(n, i), pj = WeylOp::p_hat(n, j);
                CHECK(commutator(qi, WeylOp::q_hat(n, j)).is_zero());
                CHECK(commutator(pj, WeylOp::p_hat(n, i)).is_zero());
                WeylOp expected(n);
                if (i == j)
                    expected = WeylOp::identity(n).scaled_hbar(Scalar::i(), 1);
                CHECK(commutator(qi, pj) == expected);
            }
    }
}

TEST_CASE("composition is associative") {
    kqtest::Rng rng(11);
    for (int round = 0; round < 6; ++round) {
        WeylOp a = weyl_quantize(kqtest::random_poly(rng, 2, 3, 3, true), 1);
        WeylOp b = weyl_quantize(kqtest::random_poly(rng, 2, 3, 3, true), 1);
        WeylOp c = weyl_quantize(kqtest::random_poly(rng, 2, 2, 2, true), 1)
                       .scaled_hbar(Scalar(1), 1);
        CHECK(weyl_compose(weyl_compose(a, b), c) == weyl_compose(a, weyl_compose(b, c)));
    }
}

TEST_CASE("quantization of the basic monomials") {
    const WeylOp q = WeylOp::q_hat(1, 1), p = WeylOp::p_hat(1, 1);
    const Poly qv = Poly::variable(2, 1), pv = Poly::variable(2, 2);

    SUBCASE("qp -> qhat phat - i hbar / 2") {
        WeylOp expected = weyl_compose(q, p) +
                          WeylOp::identity(1).scaled_hbar(Scalar(Rational(-1, 2), Rational(0)) * Scalar::i(), 1);
        // -(i/2) hbar: coefficient is -1/2 * i
        WeylOp expected2 = weyl_compose(q, p);
        expected2.add_term_at({{0}, {0}}, 1, Scalar(Rational(0), Rational(-1, 2)));
        CHECK(expected == expected2);
        CHECK(weyl_quantize(qv * pv, 1) == expected2);
        // ... and equals the symmetrized product directly.
        WeylOp sym = (weyl_compose(q, p) + weyl_compose(p, q)).scaled(Scalar::from_fraction(1, 2));
        CHECK(weyl_quantize(qv * pv, 1) == sym);
    }

    SUBCASE("qp^2 -> (qhat phat^2 + phat^2 qhat)/2 = qhat phat^2 - i hbar phat") {
        WeylOp p2 = weyl_compose(p, p);
        WeylOp sym = (weyl_compose(q, p2) + weyl_compose(p2, q)).scaled(Scalar::from_fraction(1, 2));
        CHECK(weyl_quantize(qv * pv * pv, 1) == sym);
        WeylOp normal = weyl_compose(q, p2);
        normal.add_term_at({{0}, {1}}, 1, Scalar(Rational(0), Rational(-1)));
        CHECK(sym == normal);
    }

    SUBCASE("pure powers pass through") {
        WeylOp qpow = WeylOp::identity(1), ppow = WeylOp::identity(1);
        Poly qm = Poly::constant(2, Scalar(1)), pm = Poly::constant(2, Scalar(1));
        for (int m = 1; m <= 5; ++m) {
            qpow = weyl_compose(qpow, q);
            ppow = weyl_compose(ppow, p);
            qm = qm * qv;
            pm = pm * pv;
            CHECK(weyl_quantize(qm, 1) == qpow);
            CHECK(weyl_quantize(pm, 1) == ppow);
        }
    }

    SUBCASE("distinct canonical pairs factorize") {
        // Q(q1 p1 q2 p2) = (q1hat p1hat - i hbar/2)(q2hat p2hat - i hbar/2)
        Poly f = Poly::variable(4, 1) * Poly::variable(4, 3) *
                 Poly::variable(4, 2) * Poly::variable(4, 4);
        WeylOp a1 = weyl_compose(WeylOp::q_hat(2, 1), WeylOp::p_hat(2, 1));
        a1.add_term_at({{0, 0}, {0, 0}}, 1, Scalar(Rational(0), Rational(-1, 2)));
        WeylOp a2 = weyl_compose(WeylOp::q_hat(2, 2), WeylOp::p_hat(2, 2));
        a2.add_term_at({{0, 0}, {0, 0}}, 1, Scalar(Rational(0), Rational(-1, 2)));
        CHECK(weyl_quantize(f, 2) == weyl_compose(a1, a2));
        CHECK(commutator(WeylOp::q_hat(2, 1), WeylOp::p_hat(2, 2)).is_zero());
    }
}

TEST_CASE("interleaving average matches the closed-form Weyl ordering") {
    // Q_W(q^a p^b) = sum_k (-i hbar/2)^k k! C(a,k) C(b,k) qhat^{a-k} phat^{b-k},
    // an independent formula never used by the implementation.
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            WeylOp expected(1);
            Rational kfact(1);
            for (int k = 0; k <= std::min(a, b); ++k) {
                if (k > 0) kfact *= k;
                Scalar c = half_i_pow(k) * Scalar(kfact * binom(a, k) * binom(b, k));
                expected.add_term_at({{a - k}, {b - k}}, k, c);
            }
            CHECK(weyl_quantize(Poly::monomial(2, {a, b}, Scalar(1)), 1) == expected);
        }
}

TEST_CASE("bracket intertwining on the low-degree sector") {
    // [Q_W(f), Q_W(g)] = i hbar Q_W({f,g}) for every f of degree <= 2 and
    // every monomial g of degree <= 5 (exhaustive over the monomial basis).
    for (int fa = 0; fa <= 2; ++fa)
        for (int fb = 0; fa + fb <= 2; ++fb)
            for (int ga = 0; ga <= 5; ++ga)
                for (int gb = 0; ga + gb <= 5; ++gb) {
                    Poly f = Poly::monomial(2, {fa, fb}, Scalar(1));
                    Poly g = Poly::monomial(2, {ga, gb}, Scalar(1));
                    WeylOp lhs = commutator(weyl_quantize(f, 1), weyl_quantize(g, 1));
                    WeylOp rhs = weyl_quantize(poisson_canonical(f, g, 1), 1)
                                     .scaled_hbar(Scalar::i(), 1);
                    CHECK(lhs == rhs);
                }
    // The spec's named instance: [Q(q^2), Q(p^2)] = i hbar Q(4qp).
    Poly q2 = Poly::monomial(2, {2, 0}, Scalar(1));
    Poly p2 = Poly::monomial(2, {0, 2}, Scalar(1));
    CHECK(commutator(weyl_quantize(q2, 1), weyl_quantize(p2, 1)) ==
          weyl_quantize(Poly::monomial(2, {1, 1}, Scalar(4)), 1).scaled_hbar(Scalar::i(), 1));
}

TEST_CASE("Wigner symbol inverts quantization") {
    SUBCASE("identity and qhat phat") {
        PolySeries one = wigner_symbol(WeylOp::identity(1));
        CHECK(one.at(0) == Poly::constant(2, Scalar(1)));
        for (int k = 1; k <= one.truncation_order(); ++k) CHECK(one.at(k).is_zero());

        PolySeries s = wigner_symbol(weyl_compose(WeylOp::q_hat(1, 1), WeylOp::p_hat(1, 1)));
        CHECK(s.at(0) == Poly::monomial(2, {1, 1}, Scalar(1)));
        CHECK(s.at(1) == Poly::constant(2, Scalar(Rational(0), Rational(1, 2))));
        for (int k = 2; k <= s.truncation_order(); ++k) CHECK(s.at(k).is_zero());
    }

    SUBCASE("random polynomials, one and two pairs") {
        kqtest::Rng rng(23);
        for (int n : {1, 2})
            for (int round = 0; round < 5; ++round) {
                Poly f = kqtest::random_poly(rng, 2 * n, 4, 4, true);
                PolySeries s = wigner_symbol(weyl_quantize(f, n));
                CHECK(s.at(0) == f);
                for (int k = 1; k <= s.truncation_order(); ++k) CHECK(s.at(k).is_zero());
            }
    }
}

TEST_CASE("Moyal product examples") {
    const Pi pi = symplectic(1);
    const Poly qv = Poly::variable(2, 1), pv = Poly::variable(2, 2);

    SUBCASE("unit") {
        kqtest::Rng rng(5);
        Poly f = kqtest::random_poly(rng, 2, 4, 4);
        PolySeries m = moyal_product(f, Poly::constant(2, Scalar(1)), pi, 6);
        CHECK(m.at(0) == f);
        for (int k = 1; k <= 6; ++k) CHECK(m.at(k).is_zero());
    }

    SUBCASE("q * p - p * q = i hbar") {
        PolySeries c = moyal_product(qv, pv, pi, 4) - moyal_product(pv, qv, pi, 4);
        CHECK(c.at(0).is_zero());
        CHECK(c.at(1) == Poly::constant(2, Scalar::i()));
        for (int k = 2; k <= 4; ++k) CHECK(c.at(k).is_zero());
    }

    SUBCASE("q^2 * p^2 expansion") {
        PolySeries m = moyal_product(qv * qv, pv * pv, pi, 6);
        CHECK(m.at(0) == Poly::monomial(2, {2, 2}, Scalar(1)));
        CHECK(m.at(1) == Poly::monomial(2, {1, 1}, Scalar(Rational(0), Rational(2))));
        CHECK(m.at(2) == Poly::constant(2, Scalar(Rational(-1, 2))));   // (i hbar)^2 / 2
        for (int k = 3; k <= 6; ++k) CHECK(m.at(k).is_zero());
    }

    SUBCASE("rejects a non-antisymmetric matrix") {
        Pi bad = pi;
        bad[0][0] = Scalar(1);
        CHECK_THROWS_AS(moyal_product(qv, pv, bad, 2), std::invalid_argument);
    }
}

TEST_CASE("Moyal product is the pullback of operator composition") {
    kqtest::Rng rng(31);
    const int N = 12;
    for (int n : {1, 2}) {
        const Pi pi = symplectic(n);
        for (int round = 0; round < 5; ++round) {
            Poly f = kqtest::random_poly(rng, 2 * n, 3, 3, true);
            Poly g = kqtest::random_poly(rng, 2 * n, 3, 3, true);
            PolySeries lhs = moyal_product(f, g, pi, N);
            PolySeries rhs = wigner_symbol(weyl_compose(weyl_quantize(f, n), weyl_quantize(g, n)));
            CHECK(lhs == rhs.truncated(N));
            for (int k = N + 1; k <= rhs.truncation_order(); ++k) CHECK(rhs.at(k).is_zero());
        }
    }
}

TEST_CASE("Moyal product is associative") {
    kqtest::Rng rng(37);
    const int N = 14;
    const Pi pi = symplectic(1);
    for (int round = 0; round < 5; ++round) {
        Poly f = kqtest::random_poly(rng, 2, 3, 3);
        Poly g = kqtest::random_poly(rng, 2, 3, 3);
        Poly h = kqtest::random_poly(rng, 2, 3, 3);
        PolySeries left = star_right(moyal_product(f, g, pi, N), h, pi, N);
        PolySeries right = star_left(f, moyal_product(g, h, pi, N), pi, N);
        CHECK(left == right);
    }
}

TEST_CASE("no-go residual") {
    GroenewoldReport report = groenewold_residual();
    CHECK(report.poisson_side.is_zero());
    // The combination of brackets vanishes classically but the nested
    // commutators of its Weyl quantizations leave 3 (i hbar)^2 = -3 hbar^2
    // times the identity.
    WeylOp expected = WeylOp::identity(1).scaled_hbar(Scalar(-3), 2);
    CHECK(report.operator_side == expected);

    // With first powers instead of cubes everything sits in the exact sector
    // and the discrepancy is zero.
    Poly qv = Poly::variable(2, 1), pv = Poly::variable(2, 2);
    WeylOp low = commutator(weyl_quantize(qv, 1), weyl_quantize(pv, 1)).divided_by_ihbar() -
                 weyl_quantize(poisson_canonical(qv, pv, 1), 1);
    CHECK(low.is_zero());
}

TEST_CASE("division by i hbar requires a vanishing constant term") {
    CHECK_THROWS_AS(WeylOp::identity(1).divided_by_ihbar(), std::domain_error);
    WeylOp a = WeylOp::q_hat(1, 1).scaled_hbar(Scalar(2), 3);
    CHECK(a.divided_by_ihbar() == WeylOp::q_hat(1, 1).scaled_hbar(Scalar(2) / Scalar::i(), 2));
}
