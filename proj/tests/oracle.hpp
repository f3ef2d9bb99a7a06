#pragma once

// High-precision floating evaluation used as an independent check of the
// exact code paths.

#include "ccf/surd.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ccf::testing {

using Big = boost::multiprecision::cpp_bin_float_100;

struct BigComplex {
    Big re, im;
};

inline Big big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

inline BigComplex big(const FieldElement& f) {
    return {big(f.re()), big(f.eta()) * boost::multiprecision::sqrt(Big(info(f.ring()).radicand))};
}

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    Big n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

inline Big abs(const BigComplex& a) { return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im); }

inline BigComplex principal_sqrt(const BigComplex& w) {
    Big m = abs(w);
    Big x = boost::multiprecision::sqrt((m + w.re) / 2);
    Big y = boost::multiprecision::sqrt((m - w.re) / 2);
    if (w.im < 0) y = -y;
    return {x, y};
}

/// Both roots (-b +- sqrt(b^2 - 4ac)) / 2a, plus sign first.
inline std::pair<BigComplex, BigComplex> quadratic_roots(const SurdContext& ctx) {
    BigComplex a = big(ctx.a().to_field()), b = big(ctx.b().to_field());
    BigComplex s = principal_sqrt(big(ctx.discriminant().to_field()));
    BigComplex two_a = BigComplex{2, 0} * a;
    return {(BigComplex{0, 0} - b + s) / two_a, (BigComplex{0, 0} - b - s) / two_a};
}

inline bool contains(const ComplexBox& box, const BigComplex& z, const Big& slack = Big("1e-60")) {
    return big(box.re.lo) - slack <= z.re && z.re <= big(box.re.hi) + slack && big(box.im.lo) - slack <= z.im &&
           z.im <= big(box.im.hi) + slack;
}

inline BigComplex value(const SurdElement& e, const BigComplex& z) { return big(e.alpha()) + big(e.beta()) * z; }

}  // namespace ccf::testing
