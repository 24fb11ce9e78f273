/*
 * series.hpp
 * ----------
 * Truncated formal power series in hbar with an arbitrary additive payload
 * (Scalar, Poly, MultiDiffOp, ...).  All arithmetic discards terms of order
 * greater than the truncation order N; combining two series takes the minimum
 * of their truncation orders.
 */
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace kq {

template <class T>
class HbarSeries {
public:
    // `zero` is the additive identity of the payload type (payloads like Poly
    // carry a dimension, so the zero element is not default-constructible in
    // a context-free way).
    HbarSeries(int truncation_order, T zero)
        : n_(truncation_order), zero_(std::move(zero)) {
        if (n_ < 0) throw std::invalid_argument("negative truncation order");
    }

    int truncation_order() const { return n_; }
    const T& zero_payload() const { return zero_; }

    const T& at(int k) const {
        if (k < 0 || k > n_) throw std::out_of_range("hbar order out of range");
        return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : zero_;
    }

    void set(int k, T v) {
        if (k < 0) throw std::out_of_range("negative hbar order");
        if (k > n_) return;     // beyond truncation: silently dropped
        if (k >= static_cast<int>(coeffs_.size())) coeffs_.resize(k + 1, zero_);
        coeffs_[k] = std::move(v);
    }

    void add_at(int k, const T& v) {
        if (k < 0) throw std::out_of_range("negative hbar order");
        if (k > n_) return;
        if (k >= static_cast<int>(coeffs_.size())) coeffs_.resize(k + 1, zero_);
        coeffs_[k] = coeffs_[k] + v;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!(c == zero_)) return false;
        return true;
    }

    HbarSeries truncated(int m) const {
        HbarSeries r(m < n_ ? m : n_, zero_);
        for (int k = 0; k <= r.n_ && k < static_cast<int>(coeffs_.size()); ++k)
            r.set(k, coeffs_[k]);
        return r;
    }

    friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
        HbarSeries r(a.n_ < b.n_ ? a.n_ : b.n_, a.zero_);
        for (int k = 0; k <= r.n_; ++k) r.set(k, a.at(k) + b.at(k));
        return r;
    }

    friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
        HbarSeries r(a.n_ < b.n_ ? a.n_ : b.n_, a.zero_);
        for (int k = 0; k <= r.n_; ++k) r.set(k, a.at(k) - b.at(k));
        return r;
    }

    friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
        if (a.n_ != b.n_) return false;
        int top = static_cast<int>(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (int k = 0; k < top; ++k)
            if (!(a.at(k) == b.at(k))) return false;
        return true;
    }

    // Cauchy product truncated at min(N_a, N_b).  Works for any payload with
    // operator* (Scalar*Scalar, Poly*Poly).
    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
        HbarSeries r(a.n_ < b.n_ ? a.n_ : b.n_, a.zero_);
        for (int i = 0; i < static_cast<int>(a.coeffs_.size()); ++i) {
            if (a.coeffs_[i] == a.zero_) continue;
            for (int j = 0; j < static_cast<int>(b.coeffs_.size()); ++j) {
                if (i + j > r.n_) break;
                r.add_at(i + j, a.coeffs_[i] * b.coeffs_[j]);
            }
        }
        return r;
    }

    // Convolution with a caller-supplied bilinear combiner (used for payloads
    // whose "product" is a bracket or an operator composition).  The combiner
    // may change the payload shape (e.g. arity), so the result's additive
    // identity must be supplied.
    template <class F>
    static HbarSeries convolve(const HbarSeries& a, const HbarSeries& b, F&& combine,
                               T zero_result) {
        HbarSeries r(a.n_ < b.n_ ? a.n_ : b.n_, std::move(zero_result));
        for (int i = 0; i <= r.n_; ++i)
            for (int j = 0; i + j <= r.n_; ++j) {
                if (i >= static_cast<int>(a.coeffs_.size())) break;
                if (j >= static_cast<int>(b.coeffs_.size())) continue;
                r.add_at(i + j, combine(a.coeffs_[i], b.coeffs_[j]));
            }
        return r;
    }

private:
    int n_;
    T zero_;
    std::vector<T> coeffs_;   // coeffs_[k] is the hbar^k payload; may be short
};

} // namespace kq
