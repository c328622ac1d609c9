#ifndef MOULDCALC_SCALAR_HPP
#define MOULDCALC_SCALAR_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "mouldcalc/errors.hpp"

namespace mouldcalc {

// Exact rational, always canonical (lowest terms, positive denominator).
// GMP keeps arithmetic results canonical as long as the operands are.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

// The coefficient field: Gaussian rationals re + im*i.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v, 1), im_(0) {} // NOLINT: implicit by design
    Scalar(Rational re) : re_(std::move(re)), im_(0) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    // |z|^2, a nonnegative rational.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw DivisionByZero("scalar division by zero");
        Rational n2 = o.norm2();
        Rational re = (re_ * o.re_ + im_ * o.im_) / n2;
        Rational im = (im_ * o.re_ - re_ * o.im_) / n2;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order (re, then im); used only for canonical sorting, it is not
    // compatible with the field structure.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

private:
    Rational re_, im_;
};

Scalar inverse(const Scalar& s);

// Canonical rendering: "p", "p/q", "r*i", "p/q+r/s*i", "p/q-r/s*i".
std::string to_string(const Scalar& s);
Scalar parse_scalar(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace mouldcalc

#endif
