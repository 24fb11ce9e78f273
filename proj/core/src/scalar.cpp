#include "kq/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace kq {

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

Scalar& Scalar::operator*=(const Scalar& o) {
    Rational nre = re * o.re - im * o.im;
    Rational nim = re * o.im + im * o.re;
    re = std::move(nre);
    im = std::move(nim);
    return *this;
}

Scalar Scalar::operator/(const Scalar& o) const {
    Rational n2 = o.re * o.re + o.im * o.im;
    if (n2 == 0) throw std::domain_error("Scalar division by zero");
    // a/b = a * conj(b) / |b|^2
    Scalar num = *this * o.conj();
    return Scalar(num.re / n2, num.im / n2);
}

double Scalar::magnitude() const {
    return std::abs(re.get_d()) + std::abs(im.get_d());
}

std::string Scalar::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out += rational_to_string(re);
    if (im != 0) {
        if (!out.empty() && im > 0) out += "+";
        if (im == 1) out += "i";
        else if (im == -1) out += "-i";
        else out += rational_to_string(im) + "i";
    }
    return out;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite double");
    Rational r(x);   // mpq_class(double) is exact
    r.canonicalize();
    return r;
}

} // namespace kq
