#include "kq/polyvector.hpp"

#include "kq/hochschild.hpp"   // permutation_sign

#include <algorithm>
#include <stdexcept>

namespace kq {

namespace {

// Sort a tuple ascending, tracking the permutation sign; repeated index -> 0.
std::optional<std::pair<PolyVectorField::IndexTuple, int>>
sort_signed(const PolyVectorField::IndexTuple& idx) {
    PolyVectorField::IndexTuple s(idx);
    int sign = 1;
    for (size_t i = 0; i + 1 < s.size(); ++i)
        for (size_t j = 0; j + 1 < s.size() - i; ++j)
            if (s[j] > s[j + 1]) {
                std::swap(s[j], s[j + 1]);
                sign = -sign;
            }
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1]) return std::nullopt;
    return std::make_pair(std::move(s), sign);
}

} // namespace

PolyVectorField PolyVectorField::function(const Poly& f) {
    PolyVectorField X(f.dimension(), 0);
    X.add_component({}, f);
    return X;
}

PolyVectorField PolyVectorField::basis_vector(int d, int axis) {
    PolyVectorField X(d, 1);
    X.add_component({axis}, Poly::constant(d, Scalar(1)));
    return X;
}

void PolyVectorField::add_component(const IndexTuple& idx, const Poly& coeff) {
    if (static_cast<int>(idx.size()) != k_)
        throw std::invalid_argument("component tuple length != degree");
    for (int ax : idx)
        if (ax < 1 || ax > d_) throw std::out_of_range("component axis out of range");
    if (coeff.is_zero()) return;
    auto sorted = sort_signed(idx);
    if (!sorted) return;   // repeated index
    auto& [key, sign] = *sorted;
    Poly c = (sign > 0) ? coeff : -coeff;
    auto [it, inserted] = coeffs_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Poly PolyVectorField::component(const IndexTuple& idx) const {
    auto sorted = sort_signed(idx);
    if (!sorted) return Poly::zero(d_);
    auto it = coeffs_.find(sorted->first);
    if (it == coeffs_.end()) return Poly::zero(d_);
    return sorted->second > 0 ? it->second : -it->second;
}

PolyVectorField PolyVectorField::operator-() const {
    PolyVectorField r(d_, k_);
    for (const auto& [i, c] : coeffs_) r.coeffs_.emplace(i, -c);
    return r;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
    if (d_ != o.d_ || k_ != o.k_)
        throw std::invalid_argument("PolyVectorField shape mismatch");
    for (const auto& [i, c] : o.coeffs_) add_component(i, c);
    return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
    if (d_ != o.d_ || k_ != o.k_)
        throw std::invalid_argument("PolyVectorField shape mismatch");
    for (const auto& [i, c] : o.coeffs_) add_component(i, -c);
    return *this;
}

PolyVectorField PolyVectorField::scaled(const Scalar& s) const {
    PolyVectorField r(d_, k_);
    if (s.is_zero()) return r;
    for (const auto& [i, c] : coeffs_) r.add_component(i, c.scaled(s));
    return r;
}

std::string PolyVectorField::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : coeffs_) {
        if (!out.empty()) out += "  +  ";
        out += "(" + c.to_string() + ")";
        for (int ax : idx) out += " ^d" + std::to_string(ax);
    }
    return out;
}

PolyVectorField wedge(const PolyVectorField& X, const PolyVectorField& Y) {
    if (X.dimension() != Y.dimension())
        throw std::invalid_argument("wedge: dimension mismatch");
    PolyVectorField r(X.dimension(), X.degree() + Y.degree());
    for (const auto& [ix, cx] : X.coeffs())
        for (const auto& [iy, cy] : Y.coeffs()) {
            PolyVectorField::IndexTuple idx(ix);
            idx.insert(idx.end(), iy.begin(), iy.end());
            r.add_component(idx, cx * cy);
        }
    return r;
}

PolyVectorField diamond(const PolyVectorField& X, const PolyVectorField& Y) {
    if (X.dimension() != Y.dimension())
        throw std::invalid_argument("diamond: dimension mismatch");
    const int p = X.degree(), q = Y.degree();
    if (p < 1) throw std::invalid_argument("diamond: left factor must have degree >= 1");
    PolyVectorField r(X.dimension(), p + q - 1);
    for (const auto& [ix, cx] : X.coeffs()) {
        for (int rr = 1; rr <= p; ++rr) {
            const int axis = ix[rr - 1];
            for (const auto& [iy, cy] : Y.coeffs()) {
                Poly dcy = cy.partial(axis);
                if (dcy.is_zero()) continue;
                PolyVectorField::IndexTuple idx;
                idx.reserve(p + q - 1);
                for (int t = 0; t < p; ++t)
                    if (t != rr - 1) idx.push_back(ix[t]);
                idx.insert(idx.end(), iy.begin(), iy.end());
                Poly c = cx * dcy;
                r.add_component(idx, (rr % 2 == 1) ? c : -c);   // (-1)^{r+1}
            }
        }
    }
    return r;
}

PolyVectorField schouten_nijenhuis(const PolyVectorField& X, const PolyVectorField& Y) {
    if (X.dimension() != Y.dimension())
        throw std::invalid_argument("schouten_nijenhuis: dimension mismatch");
    const int p = X.shifted_degree(), q = Y.shifted_degree();
    const int deg = X.degree() + Y.degree() - 1;
    PolyVectorField r(X.dimension(), deg);
    if (X.degree() >= 1) {
        PolyVectorField xy = diamond(X, Y);
        r += (p % 2 == 0) ? xy : -xy;                            // (-1)^p X<>Y
    }
    if (Y.degree() >= 1) {
        PolyVectorField yx = diamond(Y, X);
        r -= (((p - 1) * q) % 2 == 0) ? yx : -yx;                // (-1)^{(p-1)q} Y<>X
    }
    return r;
}

PoissonCheck is_poisson(const PolyVectorField& pi) {
    if (pi.degree() != 2) throw std::invalid_argument("is_poisson expects a bivector");
    PolyVectorField res = schouten_nijenhuis(pi, pi);
    return PoissonCheck{res.is_zero(), res};
}

MultiDiffOp hkr(const PolyVectorField& X) {
    const int d = X.dimension();
    const int k = X.degree();
    MultiDiffOp op(d, k);
    if (k == 0) {
        for (const auto& [idx, c] : X.coeffs()) op.add_term({}, c);
        return op;
    }
    mpz_class kfac;
    mpz_fac_ui(kfac.get_mpz_t(), k);
    const Scalar inv_fac(Rational(1) / Rational(kfac));
    std::vector<int> perm(k);
    for (const auto& [idx, c] : X.coeffs()) {
        for (int t = 0; t < k; ++t) perm[t] = t;
        // All orderings of the stored tuple = all nonzero tensor components.
        do {
            int sign = permutation_sign(perm);
            MultiDiffOp::DerivKey key;
            key.reserve(k);
            for (int t = 0; t < k; ++t) {
                MultiIndex e(d, 0);
                e[idx[perm[t]] - 1] = 1;
                key.push_back(std::move(e));
            }
            Poly coeff = c.scaled(sign > 0 ? inv_fac : -inv_fac);
            op.add_term(key, coeff);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return op;
}

Poly poisson_pairing(const PolyVectorField& pi, const Poly& f, const Poly& g) {
    if (pi.degree() != 2) throw std::invalid_argument("poisson_pairing expects a bivector");
    Poly acc(pi.dimension());
    for (const auto& [idx, c] : pi.coeffs()) {
        const int i = idx[0], j = idx[1];
        acc += c * (f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i));
    }
    return acc;
}

} // namespace kq
