#include "kq/weyl.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kq {

namespace {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int j = 1; j <= k; ++j) r *= Rational(n - j + 1, j);
    return r;
}

Scalar i_pow(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

ScalarSeries unit_series() {
    ScalarSeries s(WeylOp::kTruncation, Scalar(0));
    s.set(0, Scalar(1));
    return s;
}

ScalarSeries hbar_monomial(const Scalar& c, int k) {
    ScalarSeries s(WeylOp::kTruncation, Scalar(0));
    s.set(k, c);
    return s;
}

// Multiply every coefficient series of `a` by `c`.
WeylOp scaled_by_series(const WeylOp& a, const ScalarSeries& c) {
    WeylOp out(a.pairs());
    for (const auto& [key, s] : a.terms()) out.add_term(key, s * c);
    return out;
}

} // namespace

WeylOp WeylOp::identity(int n) {
    WeylOp a(n);
    a.add_term({MultiIndex(n, 0), MultiIndex(n, 0)}, unit_series());
    return a;
}

WeylOp WeylOp::q_hat(int n, int axis) {
    if (axis < 1 || axis > n) throw std::out_of_range("q_hat: axis out of range");
    MultiIndex I(n, 0);
    I[axis - 1] = 1;
    WeylOp a(n);
    a.add_term({I, MultiIndex(n, 0)}, unit_series());
    return a;
}

WeylOp WeylOp::p_hat(int n, int axis) {
    if (axis < 1 || axis > n) throw std::out_of_range("p_hat: axis out of range");
    MultiIndex J(n, 0);
    J[axis - 1] = 1;
    WeylOp a(n);
    a.add_term({MultiIndex(n, 0), J}, unit_series());
    return a;
}

void WeylOp::add_term(const Key& key, const ScalarSeries& c) {
    if (static_cast<int>(key.first.size()) != n_ ||
        static_cast<int>(key.second.size()) != n_)
        throw std::invalid_argument("WeylOp term: exponent length mismatch");
    // Re-expand to the house truncation order so map values stay comparable.
    ScalarSeries s(kTruncation, Scalar(0));
    int top = std::min(kTruncation, c.truncation_order());
    for (int k = 0; k <= top; ++k) s.set(k, c.at(k));
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!s.is_zero()) terms_.emplace(key, std::move(s));
        return;
    }
    it->second = it->second + s;
    if (it->second.is_zero()) terms_.erase(it);
}

void WeylOp::add_term_at(const Key& key, int hbar_order, const Scalar& c) {
    add_term(key, hbar_monomial(c, hbar_order));
}

WeylOp WeylOp::operator-() const {
    return scaled(Scalar(-1));
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
    if (n_ != o.n_) throw std::invalid_argument("WeylOp: pair count mismatch");
    for (const auto& [key, s] : o.terms_) add_term(key, s);
    return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
    *this += -o;
    return *this;
}

WeylOp WeylOp::scaled(const Scalar& s) const {
    return scaled_by_series(*this, hbar_monomial(s, 0));
}

WeylOp WeylOp::scaled_hbar(const Scalar& c, int hbar_power) const {
    return scaled_by_series(*this, hbar_monomial(c, hbar_power));
}

WeylOp WeylOp::divided_by_ihbar() const {
    WeylOp out(n_);
    const Scalar i = Scalar::i();
    for (const auto& [key, s] : terms_) {
        if (!s.at(0).is_zero())
            throw std::domain_error("divided_by_ihbar: nonzero hbar^0 coefficient");
        ScalarSeries t(kTruncation, Scalar(0));
        for (int k = 0; k + 1 <= kTruncation; ++k) t.set(k, s.at(k + 1) / i);
        out.add_term(key, t);
    }
    return out;
}

bool operator==(const WeylOp& a, const WeylOp& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::string WeylOp::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [key, s] : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        os << "(";
        bool first_ord = true;
        for (int k = 0; k <= kTruncation; ++k) {
            if (s.at(k).is_zero()) continue;
            if (!first_ord) os << " + ";
            first_ord = false;
            os << "(" << s.at(k).to_string() << ")";
            if (k == 1) os << "*h";
            else if (k > 1) os << "*h^" << k;
        }
        os << ")";
        for (int i = 0; i < n_; ++i) {
            if (key.first[i] == 0) continue;
            os << "*q" << (i + 1);
            if (key.first[i] > 1) os << "^" << key.first[i];
        }
        for (int i = 0; i < n_; ++i) {
            if (key.second[i] == 0) continue;
            os << "*p" << (i + 1);
            if (key.second[i] > 1) os << "^" << key.second[i];
        }
    }
    return os.str();
}

WeylOp weyl_compose(const WeylOp& a, const WeylOp& b) {
    if (a.pairs() != b.pairs())
        throw std::invalid_argument("weyl_compose: pair count mismatch");
    const int n = a.pairs();
    WeylOp out(n);
    for (const auto& [ka, sa] : a.terms()) {
        for (const auto& [kb, sb] : b.terms()) {
            // (q^I1 p^J1)(q^I2 p^J2): contract J1 against I2 axis by axis via
            // p^a q^b = sum_k C(a,k) C(b,k) k! (-i hbar)^k q^{b-k} p^{a-k}.
            const MultiIndex &J1 = ka.second, &I2 = kb.first;
            std::vector<int> kmax(n);
            for (int i = 0; i < n; ++i) kmax[i] = std::min(J1[i], I2[i]);
            std::vector<int> k(n, 0);
            const ScalarSeries base = sa * sb;
            while (true) {
                Rational comb(1);
                int ktot = 0;
                for (int i = 0; i < n; ++i) {
                    comb *= binom(J1[i], k[i]) * binom(I2[i], k[i]);
                    for (int j = 2; j <= k[i]; ++j) comb *= j;
                    ktot += k[i];
                }
                WeylOp::Key key{mi_add(ka.first, I2), mi_add(J1, kb.second)};
                for (int i = 0; i < n; ++i) {
                    key.first[i] -= k[i];
                    key.second[i] -= k[i];
                }
                Scalar c = i_pow(ktot) * Scalar(comb);
                if (ktot % 2 != 0) c = -c;          // (-i)^k = (-1)^k i^k
                out.add_term(key, base * hbar_monomial(c, ktot));
                int i = 0;
                while (i < n && k[i] == kmax[i]) k[i++] = 0;
                if (i == n) break;
                ++k[i];
            }
        }
    }
    return out;
}

WeylOp commutator(const WeylOp& a, const WeylOp& b) {
    return weyl_compose(a, b) - weyl_compose(b, a);
}

namespace {

// Symmetrization of a single canonical pair q^a p^b: average the normal-ordered
// compositions of all interleavings of a q-letters and b p-letters.
const WeylOp& one_pair_symmetrized(int a, int b) {
    static std::map<std::pair<int, int>, WeylOp> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;

    const WeylOp q = WeylOp::q_hat(1, 1), p = WeylOp::p_hat(1, 1);
    std::vector<int> word(a, 0);
    word.insert(word.end(), b, 1);
    WeylOp sum(1);
    long count = 0;
    do {
        WeylOp w = WeylOp::identity(1);
        for (int letter : word) w = weyl_compose(w, letter ? p : q);
        sum += w;
        ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    sum = sum.scaled(Scalar(Rational(1, count)));
    return memo.emplace(std::make_pair(a, b), std::move(sum)).first->second;
}

// Place a one-pair operator onto axis `axis` (1-based) of an n-pair algebra.
WeylOp lift_axis(const WeylOp& one, int n, int axis) {
    WeylOp out(n);
    for (const auto& [key, s] : one.terms()) {
        MultiIndex I(n, 0), J(n, 0);
        I[axis - 1] = key.first[0];
        J[axis - 1] = key.second[0];
        out.add_term({I, J}, s);
    }
    return out;
}

} // namespace

WeylOp weyl_quantize(const Poly& f, int n) {
    if (f.dimension() != 2 * n)
        throw std::invalid_argument("weyl_quantize: polynomial must live on 2n variables");
    WeylOp out(n);
    for (const auto& [e, c] : f.terms()) {
        // The symmetrization of a monomial factorizes over canonical pairs:
        // letters on distinct axes commute, so every interleaving across axes
        // yields the same operator.
        WeylOp term = WeylOp::identity(n).scaled(c);
        for (int i = 1; i <= n; ++i) {
            if (e[i - 1] == 0 && e[n + i - 1] == 0) continue;
            term = weyl_compose(term, lift_axis(one_pair_symmetrized(e[i - 1], e[n + i - 1]), n, i));
        }
        out += term;
    }
    return out;
}

HbarSeries<Poly> wigner_symbol(const WeylOp& a) {
    const int n = a.pairs();
    const int d = 2 * n;
    HbarSeries<Poly> symbol(WeylOp::kTruncation, Poly::zero(d));
    WeylOp rem = a;
    // Triangular elimination: the quantization of the top-degree monomial of
    // the symbol reproduces the top-degree term of `rem` exactly, plus terms of
    // strictly lower total degree.
    while (!rem.is_zero()) {
        const WeylOp::Key* top = nullptr;
        int top_deg = -1;
        for (const auto& [key, s] : rem.terms()) {
            int deg = mi_total(key.first) + mi_total(key.second);
            if (deg > top_deg) {
                top_deg = deg;
                top = &key;
            }
        }
        MultiIndex e(d, 0);
        for (int i = 0; i < n; ++i) {
            e[i] = top->first[i];
            e[n + i] = top->second[i];
        }
        const ScalarSeries c = rem.terms().at(*top);
        for (int k = 0; k <= WeylOp::kTruncation; ++k)
            if (!c.at(k).is_zero())
                symbol.add_at(k, Poly::monomial(d, e, c.at(k)));
        rem -= scaled_by_series(weyl_quantize(Poly::monomial(d, e, Scalar(1)), n), c);
    }
    return symbol;
}

Poly poisson_canonical(const Poly& f, const Poly& g, int n) {
    if (f.dimension() != 2 * n || g.dimension() != 2 * n)
        throw std::invalid_argument("poisson_canonical: need polynomials on 2n variables");
    Poly out(2 * n);
    for (int i = 1; i <= n; ++i) {
        out += f.partial(i) * g.partial(n + i);
        out -= f.partial(n + i) * g.partial(i);
    }
    return out;
}

HbarSeries<Poly> moyal_product(const Poly& f, const Poly& g,
                               const std::vector<std::vector<Scalar>>& pi, int N) {
    const int d = f.dimension();
    if (g.dimension() != d)
        throw std::invalid_argument("moyal_product: dimension mismatch");
    if (static_cast<int>(pi.size()) != d)
        throw std::invalid_argument("moyal_product: matrix size mismatch");
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(pi[i].size()) != d)
            throw std::invalid_argument("moyal_product: matrix size mismatch");
        for (int j = 0; j <= i; ++j)
            if (!(pi[i][j] + pi[j][i]).is_zero())
                throw std::invalid_argument("moyal_product: matrix not antisymmetric");
    }

    HbarSeries<Poly> out(N, Poly::zero(d));
    // Tensors sum_t F_t (x) G_t; applying P = sum pi^{ij} d_i (x) d_j once per
    // hbar order, then restricting to the diagonal.
    std::vector<std::pair<Poly, Poly>> tensor{{f, g}};
    Rational fact(1);
    for (int m = 0; m <= N; ++m) {
        if (m > 0) {
            fact *= 2 * m;                          // builds 2^m m!
            std::vector<std::pair<Poly, Poly>> next;
            for (const auto& [F, G] : tensor)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        if (pi[i][j].is_zero()) continue;
                        Poly dF = F.partial(i + 1).scaled(pi[i][j]);
                        if (dF.is_zero()) continue;
                        Poly dG = G.partial(j + 1);
                        if (dG.is_zero()) continue;
                        next.emplace_back(std::move(dF), std::move(dG));
                    }
            tensor = std::move(next);
            if (tensor.empty()) break;
        }
        Poly diag(d);
        for (const auto& [F, G] : tensor) diag += F * G;
        out.add_at(m, diag.scaled(i_pow(m) * Scalar(Rational(1) / fact)));
    }
    return out;
}

GroenewoldReport groenewold_residual() {
    const int n = 1, d = 2;
    const Poly q = Poly::variable(d, 1), p = Poly::variable(d, 2);
    const Poly q2 = q * q, q3 = q2 * q, p2 = p * p, p3 = p2 * p;

    Poly inner1 = poisson_canonical(q3, p2, n);     // 6 q^2 p
    Poly inner2 = poisson_canonical(q2, p3, n);     // 6 q p^2
    Poly poisson_side = poisson_canonical(q3, p3, n) -
                        poisson_canonical(inner1, inner2, n).scaled(Scalar::from_fraction(1, 12));

    // Operator side: every bracket becomes (1/i hbar)[ -, - ] of the Weyl
    // quantizations.  The two inner brackets sit in the sector where Weyl
    // quantization intertwines brackets exactly, the outer ones do not.
    WeylOp x1 = commutator(weyl_quantize(q3, n), weyl_quantize(p2, n)).divided_by_ihbar();
    WeylOp x2 = commutator(weyl_quantize(q2, n), weyl_quantize(p3, n)).divided_by_ihbar();
    WeylOp op_side =
        commutator(weyl_quantize(q3, n), weyl_quantize(p3, n)).divided_by_ihbar() -
        commutator(x1, x2).divided_by_ihbar().scaled(Scalar::from_fraction(1, 12));

    return GroenewoldReport{std::move(poisson_side), std::move(op_side)};
}

} // namespace kq
