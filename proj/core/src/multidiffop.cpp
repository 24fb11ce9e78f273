#include "kq/multidiffop.hpp"

#include <stdexcept>

namespace kq {

MultiDiffOp MultiDiffOp::from_poly(const Poly& p) {
    MultiDiffOp op(p.dimension(), 0);
    op.add_term({}, p);
    return op;
}

void MultiDiffOp::add_term(const DerivKey& derivs, const Poly& coeff) {
    if (static_cast<int>(derivs.size()) != arity_)
        throw std::invalid_argument("derivs length != arity");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(derivs, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiDiffOp MultiDiffOp::operator-() const {
    MultiDiffOp r(d_, arity_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

MultiDiffOp& MultiDiffOp::operator+=(const MultiDiffOp& o) {
    if (d_ != o.d_ || arity_ != o.arity_)
        throw std::invalid_argument("MultiDiffOp shape mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

MultiDiffOp& MultiDiffOp::operator-=(const MultiDiffOp& o) {
    if (d_ != o.d_ || arity_ != o.arity_)
        throw std::invalid_argument("MultiDiffOp shape mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

MultiDiffOp MultiDiffOp::scaled(const Scalar& s) const {
    MultiDiffOp r(d_, arity_);
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, c.scaled(s));
    return r;
}

Poly MultiDiffOp::apply(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("apply: arity mismatch");
    Poly acc(d_);
    for (const auto& [derivs, coeff] : terms_) {
        Poly term = coeff;
        for (int k = 0; k < arity_ && !term.is_zero(); ++k)
            term = term * args[k].partial_mi(derivs[k]);
        acc += term;
    }
    return acc;
}

MultiDiffOp MultiDiffOp::swapped_args(int i, int j) const {
    MultiDiffOp r(d_, arity_);
    for (const auto& [derivs, coeff] : terms_) {
        DerivKey k(derivs);
        std::swap(k[i], k[j]);
        r.add_term(k, coeff);
    }
    return r;
}

std::string MultiDiffOp::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [derivs, coeff] : terms_) {
        if (!out.empty()) out += "  +  ";
        out += "(" + coeff.to_string() + ") * ";
        for (int k = 0; k < arity_; ++k) {
            if (k) out += " (x) ";
            std::string ds;
            for (int ax = 0; ax < d_; ++ax)
                for (int r = 0; r < derivs[k][ax]; ++r)
                    ds += "d" + std::to_string(ax + 1);
            out += ds.empty() ? "id" : ds;
        }
    }
    return out;
}

} // namespace kq
