#include "ccf/interval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace ccf {

Interval::Interval(const Rational& l, const Rational& h) : lo(l), hi(h) {
    if (lo > hi) throw std::domain_error("interval with lo > hi");
}

int Interval::certain_sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
}

Interval Interval::round_outward(unsigned bits) const { return {round_down(lo, bits), round_up(hi, bits)}; }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
    std::array<Rational, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {*mn, *mx};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    Interval inv(1 / b.hi, 1 / b.lo);
    return a * inv;
}

Interval sqr(const Interval& a) {
    if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
    if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
    Rational m = std::max(Rational(a.lo * a.lo), Rational(a.hi * a.hi));
    return {0, m};
}

Interval sqrt(const Interval& a, unsigned bits) {
    if (a.hi < 0) throw std::domain_error("sqrt of a negative interval");
    Rational l0, h0, l1, h1;
    sqrt_bounds(a.lo > 0 ? a.lo : Rational(0), bits, l0, h0);
    sqrt_bounds(a.hi, bits, l1, h1);
    return {l0, h1};
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

bool intersects(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

Rational ComplexBox::width() const {
    Rational w = re.width();
    Rational h = im.width();
    return w > h ? w : h;
}

bool ComplexBox::contains(const ComplexBox& inner) const {
    return re.lo <= inner.re.lo && inner.re.hi <= re.hi && im.lo <= inner.im.lo && inner.im.hi <= im.hi;
}

std::string ComplexBox::to_string() const {
    return "[" + ccf::to_string(re.lo) + "," + ccf::to_string(re.hi) + "]x[" + ccf::to_string(im.lo) + "," +
           ccf::to_string(im.hi) + "]";
}

ComplexBox inverse(const ComplexBox& b) {
    if (b.contains_zero()) throw std::domain_error("inverse of a box containing zero");
    // 1/w = conj(w)/|w|^2. Each coordinate is monotone in the box variables
    // only piecewise, so bound numerator and denominator separately; this is
    // containment-correct and tight enough once boxes are small.
    Interval n = b.abs_sq();
    if (n.lo <= 0) throw std::domain_error("inverse of a box touching zero");
    return {b.re / n, -b.im / n};
}

bool intersects(const ComplexBox& a, const ComplexBox& b) { return intersects(a.re, b.re) && intersects(a.im, b.im); }

}  // namespace ccf
