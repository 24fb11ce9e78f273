#include "kq/poly.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace kq {

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
    int ta = mi_total(a), tb = mi_total(b);
    if (ta != tb) return ta < tb;
    return a < b;   // lexicographic tie-break
}

int mi_total(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

namespace {

// Ordered compositions of the integer n into `parts` non-negative summands,
// each with its binomial weight n!/(a_1!...a_parts!).
void compositions(int n, int parts, std::vector<int>& cur,
                  std::vector<std::pair<std::vector<int>, Rational>>& out) {
    if (parts == 1) {
        cur.push_back(n);
        out.emplace_back(cur, Rational(0));
        cur.pop_back();
        return;
    }
    for (int a = 0; a <= n; ++a) {
        cur.push_back(a);
        compositions(n - a, parts - 1, cur, out);
        cur.pop_back();
    }
}

Rational multinomial(int n, const std::vector<int>& parts) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), n);
    mpz_class den(1);
    for (int a : parts) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), a);
        den *= f;
    }
    return Rational(num) / Rational(den);
}

} // namespace

std::vector<std::pair<std::vector<MultiIndex>, Rational>>
mi_splits(const MultiIndex& k, int parts) {
    const int d = static_cast<int>(k.size());
    // Per-axis compositions, then the cartesian product across axes.
    std::vector<std::vector<std::pair<std::vector<int>, Rational>>> per_axis(d);
    for (int ax = 0; ax < d; ++ax) {
        std::vector<int> cur;
        compositions(k[ax], parts, cur, per_axis[ax]);
        for (auto& [comp, w] : per_axis[ax]) w = multinomial(k[ax], comp);
    }
    std::vector<std::pair<std::vector<MultiIndex>, Rational>> out;
    std::vector<MultiIndex> split(parts, MultiIndex(d, 0));
    Rational weight(1);
    // Depth-first over axes; accumulate the product of per-axis weights.
    std::vector<size_t> choice(d, 0);
    std::function<void(int, Rational)> rec = [&](int ax, Rational w) {
        if (ax == d) {
            out.emplace_back(split, w);
            return;
        }
        for (const auto& [comp, cw] : per_axis[ax]) {
            for (int p = 0; p < parts; ++p) split[p][ax] = comp[p];
            rec(ax + 1, w * cw);
        }
    };
    rec(0, weight);
    return out;
}

Poly::Poly(int d, TermMap terms) : d_(d), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

Poly Poly::constant(int d, const Scalar& c) {
    Poly p(d);
    p.add_term(MultiIndex(d, 0), c);
    return p;
}

Poly Poly::variable(int d, int axis) {
    if (axis < 1 || axis > d) throw std::out_of_range("variable axis out of range");
    MultiIndex e(d, 0);
    e[axis - 1] = 1;
    return monomial(d, e, Scalar(1));
}

Poly Poly::monomial(int d, const MultiIndex& exp, const Scalar& c) {
    if (static_cast<int>(exp.size()) != d) throw std::invalid_argument("exponent length != d");
    Poly p(d);
    p.add_term(exp, c);
    return p;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return mi_total(terms_.rbegin()->first);
}

Scalar Poly::coeff(const MultiIndex& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Scalar() : it->second;
}

void Poly::add_term(const MultiIndex& exp, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(d_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (d_ != o.d_) throw std::invalid_argument("Poly dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (d_ != o.d_) throw std::invalid_argument("Poly dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("Poly dimension mismatch");
    Poly r(a.d_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term(mi_add(ea, eb), ca * cb);
    return r;
}

Poly Poly::scaled(const Scalar& s) const {
    Poly r(d_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
}

Poly Poly::partial(int axis) const {
    if (axis < 1 || axis > d_) throw std::out_of_range("partial axis out of range");
    const int ax = axis - 1;
    Poly r(d_);
    for (const auto& [e, c] : terms_) {
        if (e[ax] == 0) continue;
        MultiIndex ne(e);
        ne[ax] -= 1;
        r.add_term(ne, c * Scalar(e[ax]));
    }
    return r;
}

Poly Poly::partial_mi(const MultiIndex& k) const {
    Poly r(*this);
    for (int ax = 0; ax < d_ && !r.is_zero(); ++ax)
        for (int j = 0; j < k[ax]; ++j) r = r.partial(ax + 1);
    return r;
}

Scalar Poly::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != d_)
        throw std::invalid_argument("eval point length != d");
    Scalar acc;
    for (const auto& [e, c] : terms_) {
        Scalar term = c;
        for (int ax = 0; ax < d_; ++ax)
            for (int j = 0; j < e[ax]; ++j) term *= point[ax];
        acc += term;
    }
    return acc;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // Render highest degree first for readability.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.to_string();
        bool wrap = (c.re != 0 && c.im != 0);    // mixed re+im needs parentheses
        std::string mono;
        for (int ax = 0; ax < d_; ++ax) {
            if (e[ax] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(ax + 1);
            if (e[ax] > 1) mono += "^" + std::to_string(e[ax]);
        }
        std::string piece;
        if (mono.empty()) {
            piece = wrap ? "(" + cs + ")" : cs;
        } else if (!wrap && cs == "1") {
            piece = mono;
        } else if (!wrap && cs == "-1") {
            piece = "-" + mono;
        } else {
            piece = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
        }
        if (first) {
            out = piece;
            first = false;
        } else if (!piece.empty() && piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

} // namespace kq
