#pragma once

#include "ccf/numeric.hpp"

#include <string>

namespace ccf {

/// Closed interval with exact rational endpoints. Arithmetic is exact; call
/// round_outward() to cap endpoint size at a given precision.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(const Rational& point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
    Interval(const Rational& l, const Rational& h);

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool is_point() const { return lo == hi; }
    /// -1 / +1 when the whole interval is strictly negative / positive, else 0.
    int certain_sign() const;

    Interval round_outward(unsigned bits) const;

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b);
    /// b must not contain zero.
    friend Interval operator/(const Interval& a, const Interval& b);
};

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a, unsigned bits);
Interval hull(const Interval& a, const Interval& b);
bool intersects(const Interval& a, const Interval& b);

/// Axis-aligned complex box [re_lo, re_hi] x [im_lo, im_hi].
struct ComplexBox {
    Interval re;
    Interval im;

    ComplexBox() = default;
    ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    ComplexBox(const Rational& re_lo, const Rational& re_hi, const Rational& im_lo, const Rational& im_hi)
        : re(re_lo, re_hi), im(im_lo, im_hi) {}

    /// Largest side length.
    Rational width() const;
    bool is_point() const { return re.is_point() && im.is_point(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool contains(const ComplexBox& inner) const;
    Interval abs_sq() const { return sqr(re) + sqr(im); }

    ComplexBox round_outward(unsigned bits) const { return {re.round_outward(bits), im.round_outward(bits)}; }

    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexBox operator-(const ComplexBox& a) { return {-a.re, -a.im}; }
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexBox conj() const { return {re, -im}; }
    std::string to_string() const;
};

/// Box enclosing {1/w : w in b}. Throws std::domain_error if b contains 0.
ComplexBox inverse(const ComplexBox& b);
bool intersects(const ComplexBox& a, const ComplexBox& b);

}  // namespace ccf
