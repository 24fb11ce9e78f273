#include "kq/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kq {

MultiDiffOp mu(int d) {
    MultiDiffOp op(d, 2);
    op.add_term({MultiIndex(d, 0), MultiIndex(d, 0)}, Poly::constant(d, Scalar(1)));
    return op;
}

MultiDiffOp gerstenhaber_insert(const MultiDiffOp& f, const MultiDiffOp& g, int slot) {
    const int d = f.dimension();
    const int fa = f.arity(), ga = g.arity();
    if (slot < 0 || slot >= fa) throw std::out_of_range("insertion slot");
    MultiDiffOp out(d, fa + ga - 1);

    for (const auto& [fk, fc] : f.terms()) {
        // f's derivative on the inserted slot hits g's coefficient and each of
        // g's arguments: distribute via a multinomial split of fk[slot].
        for (const auto& [A, w] : mi_splits(fk[slot], ga + 1)) {
            for (const auto& [gk, gc] : g.terms()) {
                Poly coeff = fc * gc.partial_mi(A[0]);
                if (coeff.is_zero()) continue;
                coeff = coeff.scaled(Scalar(Rational(w)));
                MultiDiffOp::DerivKey key;
                key.reserve(fa + ga - 1);
                for (int j = 0; j < slot; ++j) key.push_back(fk[j]);
                for (int j = 0; j < ga; ++j) key.push_back(mi_add(gk[j], A[j + 1]));
                for (int j = slot + 1; j < fa; ++j) key.push_back(fk[j]);
                out.add_term(key, coeff);
            }
        }
    }
    return out;
}

MultiDiffOp gerstenhaber_product(const MultiDiffOp& f, const MultiDiffOp& g) {
    const int q = g.degree();
    MultiDiffOp out(f.dimension(), f.arity() + g.arity() - 1);
    for (int i = 0; i < f.arity(); ++i) {
        MultiDiffOp ins = gerstenhaber_insert(f, g, i);
        out += ((i * q) % 2 == 0) ? ins : -ins;
    }
    return out;
}

MultiDiffOp gerstenhaber_bracket(const MultiDiffOp& f, const MultiDiffOp& g) {
    const int p = f.degree(), q = g.degree();
    MultiDiffOp fg = gerstenhaber_product(f, g);
    MultiDiffOp gf = gerstenhaber_product(g, f);
    return ((p * q) % 2 == 0) ? fg - gf : fg + gf;
}

MultiDiffOp hochschild_delta(const MultiDiffOp& f) {
    const int d = f.dimension();
    const int m = f.arity();
    MultiDiffOp out(d, m + 1);
    const MultiIndex none(d, 0);

    for (const auto& [fk, fc] : f.terms()) {
        // u_0 * f(u_1..u_m)
        {
            MultiDiffOp::DerivKey key;
            key.push_back(none);
            key.insert(key.end(), fk.begin(), fk.end());
            out.add_term(key, fc);
        }
        // (-1)^r f(..., u_{r-1} u_r, ...): slot r-1 receives a product, whose
        // derivative expands by the Leibniz rule.
        for (int r = 1; r <= m; ++r) {
            const int j = r - 1;    // slot of f receiving the merged pair
            for (const auto& [AB, w] : mi_splits(fk[j], 2)) {
                MultiDiffOp::DerivKey key;
                key.reserve(m + 1);
                for (int t = 0; t < j; ++t) key.push_back(fk[t]);
                key.push_back(AB[0]);
                key.push_back(AB[1]);
                for (int t = j + 1; t < m; ++t) key.push_back(fk[t]);
                Poly c = fc.scaled(Scalar(Rational(w)));
                out.add_term(key, (r % 2 == 0) ? c : -c);
            }
        }
        // (-1)^{m+1} f(u_0..u_{m-1}) * u_m
        {
            MultiDiffOp::DerivKey key(fk);
            key.push_back(none);
            out.add_term(key, (m % 2 == 0) ? -fc : fc);
        }
    }
    return out;
}

MultiDiffOp modified_d(const MultiDiffOp& f) {
    MultiDiffOp df = hochschild_delta(f);
    return (f.arity() % 2 == 0) ? -df : df;   // (-1)^{arity+1}
}

GaugeElement::GaugeElement(OpSeries g) : generator(std::move(g)) {
    if (generator.zero_payload().arity() != 1)
        throw std::invalid_argument("gauge generator must have arity 1");
    if (!generator.at(0).is_zero())
        throw std::invalid_argument("gauge generator must vanish at hbar^0");
}

namespace {

OpSeries series_bracket(const OpSeries& a, const OpSeries& b) {
    const int d = a.zero_payload().dimension();
    const int arity = a.zero_payload().arity() + b.zero_payload().arity() - 1;
    return OpSeries::convolve(a, b, gerstenhaber_bracket, MultiDiffOp::zero(d, arity));
}

} // namespace

OpSeries mc_residual(const OpSeries& B) {
    if (B.zero_payload().arity() != 2)
        throw std::invalid_argument("mc_residual expects an arity-2 series");
    if (!B.at(0).is_zero())
        throw std::invalid_argument("mc_residual: nonzero hbar^0 part");
    const int d = B.zero_payload().dimension();
    const int N = B.truncation_order();
    OpSeries out(N, MultiDiffOp::zero(d, 3));
    for (int k = 0; k <= N; ++k) out.set(k, modified_d(B.at(k)));
    OpSeries bb = series_bracket(B, B);
    const Scalar half = Scalar::from_fraction(1, 2);
    for (int k = 0; k <= N; ++k) out.add_at(k, bb.at(k).scaled(half));
    return out;
}

OpSeries gauge_act(const GaugeElement& x0, const OpSeries& B) {
    if (B.zero_payload().arity() != 2)
        throw std::invalid_argument("gauge_act expects an arity-2 series");
    const int d = B.zero_payload().dimension();
    const int N = B.truncation_order();
    if (x0.generator.truncation_order() != N)
        throw std::invalid_argument("gauge_act: truncation orders differ");

    // y = mu + B, then e^{ad} y = sum_k ad^k(y)/k!; each ad raises the minimal
    // hbar order by one, so k <= N terms suffice (exact truncation).
    OpSeries y(N, MultiDiffOp::zero(d, 2));
    y.set(0, mu(d));
    y = y + B;

    OpSeries acc = y;
    OpSeries power = y;
    Rational factorial(1);
    for (int k = 1; k <= N; ++k) {
        power = series_bracket(power, x0.generator);
        factorial *= k;
        OpSeries term(N, MultiDiffOp::zero(d, 2));
        for (int j = 0; j <= N; ++j)
            term.set(j, power.at(j).scaled(Scalar(Rational(1) / factorial)));
        acc = acc + term;
    }
    acc.add_at(0, -mu(d));
    return acc;
}

OpSeries bch(const GaugeElement& xg, const GaugeElement& yg) {
    const OpSeries& x = xg.generator;
    const OpSeries& y = yg.generator;
    const int N = std::min(x.truncation_order(), y.truncation_order());
    if (N > 4)
        throw std::invalid_argument("bch: only exact up to truncation order 4");
    auto scale = [&](const OpSeries& s, const Rational& r) {
        OpSeries out(s.truncation_order(), s.zero_payload());
        for (int j = 0; j <= s.truncation_order(); ++j)
            out.set(j, s.at(j).scaled(Scalar(r)));
        return out;
    };
    OpSeries xy = series_bracket(x, y);                       // weight 2
    OpSeries xxy = series_bracket(x, xy);                     // weight 3
    OpSeries yyx = series_bracket(y, series_bracket(y, x));   // weight 3
    OpSeries yxxy = series_bracket(y, xxy);                   // weight 4
    OpSeries z = x + y;
    z = z + scale(xy, Rational(1, 2));
    z = z + scale(xxy, Rational(1, 12));
    z = z + scale(yyx, Rational(1, 12));
    z = z - scale(yxxy, Rational(1, 24));
    return z.truncated(N);
}

int permutation_sign(const std::vector<int>& sigma) {
    std::vector<int> s(sigma);
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i) {
        while (s[i] != static_cast<int>(i)) {
            std::swap(s[i], s[s[i]]);
            sign = -sign;
        }
    }
    return sign;
}

int koszul_sign_sym(const std::vector<int>& degrees, const std::vector<int>& sigma) {
    const size_t n = degrees.size();
    if (sigma.size() != n) throw std::invalid_argument("koszul: size mismatch");
    {
        std::vector<int> check(sigma);
        std::sort(check.begin(), check.end());
        for (size_t i = 0; i < n; ++i)
            if (check[i] != static_cast<int>(i))
                throw std::invalid_argument("koszul: malformed permutation");
    }
    // Bubble the target ordering back to the identity; each adjacent swap of
    // elements with degrees a,b contributes (-1)^{ab}.
    std::vector<int> s(sigma);
    int sign = 1;
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = 0; j + 1 < n - i; ++j)
            if (s[j] > s[j + 1]) {
                if ((degrees[s[j]] * degrees[s[j + 1]]) % 2 != 0) sign = -sign;
                std::swap(s[j], s[j + 1]);
            }
    return sign;
}

int koszul_sign_ext(const std::vector<int>& degrees, const std::vector<int>& sigma) {
    return koszul_sign_sym(degrees, sigma) * permutation_sign(sigma);
}

int decalage_sign(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    long e = 0;
    for (int k = 1; k <= n; ++k) e += static_cast<long>(n - k) * (degrees[k - 1] - 1);
    return (e % 2 == 0) ? 1 : -1;
}

std::vector<std::vector<int>> shuffles(int i, int n) {
    if (i < 0 || i > n) throw std::out_of_range("shuffles: need 0 <= i <= n");
    std::vector<std::vector<int>> out;
    std::vector<int> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + i, 1);
    std::sort(mask.begin(), mask.end());
    // Iterate over all i-element subsets; each determines the unique shuffle
    // with both runs increasing.
    do {
        std::vector<int> first, second;
        for (int k = 0; k < n; ++k) (mask[k] ? first : second).push_back(k);
        std::vector<int> sigma(first);
        sigma.insert(sigma.end(), second.begin(), second.end());
        out.push_back(std::move(sigma));
    } while (std::next_permutation(mask.begin(), mask.end()));
    return out;
}

} // namespace kq
