#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kq/poly.hpp"
#include "kq/series.hpp"
#include "test_util.hpp"

using namespace kq;

TEST_CASE("scalar arithmetic is exact Gaussian-rational") {
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    Scalar a(Rational(1, 2), Rational(3, 4));
    Scalar b(Rational(-2, 3), Rational(1, 5));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(Scalar::from_fraction(1, 3) + Scalar::from_fraction(2, 3) == Scalar(1));
    CHECK(a.to_string() == "1/2+3/4i");
    CHECK(Scalar(Rational(0), Rational(-1)).to_string() == "-i");
}

TEST_CASE("poly basic operations") {
    const int d = 3;
    Poly x1 = Poly::variable(d, 1), x2 = Poly::variable(d, 2), x3 = Poly::variable(d, 3);

    CHECK(x1 * x2 == Poly::monomial(d, {1, 1, 0}, Scalar(1)));
    CHECK((x1 * Poly::zero(d)).is_zero());

    // (x1+x2)^2 = x1^2 + 2 x1 x2 + x2^2, cross-checked by evaluation at (1,2).
    Poly s = x1 + x2;
    Poly sq = s * s;
    Poly expect = Poly::monomial(d, {2, 0, 0}, Scalar(1)) +
                  Poly::monomial(d, {1, 1, 0}, Scalar(2)) +
                  Poly::monomial(d, {0, 2, 0}, Scalar(1));
    CHECK(sq == expect);
    CHECK(sq.eval({Scalar(1), Scalar(2), Scalar(0)}) == Scalar(9));

    // partials
    Poly p = Poly::monomial(d, {2, 1, 0}, Scalar(1));   // x1^2 x2
    CHECK(p.partial(1) == Poly::monomial(d, {1, 1, 0}, Scalar(2)));
    CHECK(x1.partial(2).is_zero());
    CHECK((x1 * x2).partial(1).partial(2) == Poly::constant(d, Scalar(1)));

    // evaluation
    CHECK((x1 * x2).eval({Scalar(2), Scalar(3), Scalar(0)}) == Scalar(6));
    Poly q = Poly::monomial(d, {2, 0, 0}, Scalar(1)) + x2;  // x1^2 + x2
    CHECK(q.eval({Scalar::from_fraction(1, 2), Scalar::from_fraction(1, 4), Scalar(0)}) ==
          Scalar::from_fraction(1, 2));

    CHECK((Poly::monomial(d, {2, 1, 0}, Scalar(2)) +
           Poly::monomial(d, {0, 0, 1}, Scalar(Rational(1, 2), Rational(3))))
              .to_string() == "2*x1^2*x2 + (1/2+3i)*x3");
}

TEST_CASE("poly ring axioms on random triples") {
    kqtest::Rng rng(20260825);
    for (int round = 0; round < 60; ++round) {
        int d = kqtest::uniform(rng, 1, 3);
        Poly a = kqtest::random_poly(rng, d, 3, 3, true);
        Poly b = kqtest::random_poly(rng, d, 3, 3, true);
        Poly c = kqtest::random_poly(rng, d, 3, 3, true);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        // structural identity confirmed by evaluation at a random point
        std::vector<Scalar> pt;
        for (int j = 0; j < d; ++j) pt.push_back(kqtest::random_scalar(rng, true));
        CHECK((a * (b + c)).eval(pt) == a.eval(pt) * (b.eval(pt) + c.eval(pt)));
    }
}

TEST_CASE("mixed partials commute") {
    kqtest::Rng rng(7);
    for (int round = 0; round < 40; ++round) {
        int d = kqtest::uniform(rng, 2, 3);
        Poly p = kqtest::random_poly(rng, d, 4, 4);
        for (int i = 1; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j)
                CHECK(p.partial(i).partial(j) == p.partial(j).partial(i));
    }
}

TEST_CASE("hbar series arithmetic") {
    auto c = [](long v) { return Scalar(v); };
    using S = HbarSeries<Scalar>;

    // (1 + h p)(1 - h p) mod h^2 = 1 (payload Scalar stands in for p=1 here;
    // the Poly payload case is covered below)
    S a(1, Scalar()), b(1, Scalar());
    a.set(0, c(1)); a.set(1, c(2));
    b.set(0, c(1)); b.set(1, c(-2));
    S ab = a * b;
    CHECK(ab.at(0) == c(1));
    CHECK(ab.at(1) == c(0));

    // truncation: (h x1)(h x2) at N=1 is 0
    const int d = 2;
    using SP = HbarSeries<Poly>;
    SP u(1, Poly::zero(d)), v(1, Poly::zero(d));
    u.set(1, Poly::variable(d, 1));
    v.set(1, Poly::variable(d, 2));
    CHECK((u * v).is_zero());

    // (1+h)^2 at N=2 = 1 + 2h + h^2
    S e(2, Scalar());
    e.set(0, c(1)); e.set(1, c(1));
    S e2 = e * e;
    CHECK(e2.at(0) == c(1));
    CHECK(e2.at(1) == c(2));
    CHECK(e2.at(2) == c(1));

    // min-truncation rule
    S w(3, Scalar());
    w.set(0, c(1));
    CHECK((w + a).truncation_order() == 1);
    CHECK((w * a).truncation_order() == 1);
}

TEST_CASE("series truncation consistency") {
    kqtest::Rng rng(99);
    const int d = 2;
    for (int round = 0; round < 30; ++round) {
        HbarSeries<Poly> a(3, Poly::zero(d)), b(3, Poly::zero(d));
        for (int k = 0; k <= 3; ++k) {
            a.set(k, kqtest::random_poly(rng, d, 2, 2));
            b.set(k, kqtest::random_poly(rng, d, 2, 2));
        }
        int m = kqtest::uniform(rng, 0, 3);
        CHECK((a * b).truncated(m) == a.truncated(m) * b.truncated(m));
    }
}
