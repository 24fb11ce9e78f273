/*
 * scalar.hpp
 * ----------
 * Gaussian rationals: exact complex numbers re + i*im with arbitrary-precision
 * rational parts (GMP mpq_class).  This is the coefficient field for every
 * symbolic computation in the library; no rounding ever happens here.
 */
#pragma once

#include <gmpxx.h>
#include <string>
#include <cstdint>

namespace kq {

using Rational = mpq_class;

// Parse "a/b" or "a"; throws std::invalid_argument on garbage.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(long v) : re(v), im(0) {}          // NOLINT: implicit on purpose
    Scalar(Rational r) : re(std::move(r)), im(0) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }
    static Scalar from_fraction(long num, long den) { return Scalar(Rational(num, den)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Exact division; throws std::domain_error on division by zero.
    Scalar operator/(const Scalar& o) const;

    // |re| + |im| as double — used only for numeric violation reports.
    double magnitude() const;

    // "1/2", "3i", "1/2+3i", "-1-2i", "0", ...
    std::string to_string() const;
};

// Exact conversion of an IEEE double into a (dyadic) rational.
Rational rational_from_double(double x);

} // namespace kq
