#include "ccf/quad_real.hpp"

#include "ccf/error.hpp"

#include <cmath>

namespace ccf {

QuadReal::QuadReal(const Rational& a, const Rational& b, const Integer& d) : a_(a), b_(b), d_(d) {
    if (d_ <= 0) throw std::domain_error("QuadReal radicand must be positive");
    normalize();
}

void QuadReal::normalize() {
    if (b_ == 0) {
        d_ = 1;
        return;
    }
    Integer s, core;
    split_square(d_, s, core);
    b_ *= s;
    d_ = core;
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
}

QuadReal QuadReal::sqrt_of(const Rational& q) {
    if (q < 0) throw std::domain_error("sqrt of a negative rational");
    if (q == 0) return QuadReal();
    // sqrt(n/d) = sqrt(n*d) / d
    Integer nd = q.get_num() * q.get_den();
    Rational coeff(1, q.get_den());
    return QuadReal(0, coeff, nd);
}

void QuadReal::unify(const QuadReal& o) {
    if (o.b_ == 0) return;
    if (b_ == 0) {
        d_ = o.d_;
        return;
    }
    if (d_ != o.d_)
        throw std::domain_error("QuadReal operands live in different fields: sqrt(" + d_.get_str() + ") vs sqrt(" +
                                o.d_.get_str() + ")");
}

int QuadReal::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b*sqrt(d) have opposite signs: compare squares.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

QuadReal QuadReal::operator-() const {
    QuadReal r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadReal& QuadReal::operator+=(const QuadReal& o) {
    unify(o);
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadReal& QuadReal::operator-=(const QuadReal& o) {
    unify(o);
    a_ -= o.a_;
    b_ -= o.b_;
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadReal& QuadReal::operator*=(const QuadReal& o) {
    if (o.b_ == 0) {
        a_ *= o.a_;
        b_ *= o.a_;
        if (b_ == 0) d_ = 1;
        return *this;
    }
    unify(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d_);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    if (b_ == 0) d_ = 1;
    return *this;
}

QuadReal& QuadReal::operator/=(const QuadReal& o) {
    if (o.b_ == 0) {
        if (o.a_ == 0) throw std::domain_error("QuadReal division by zero");
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    unify(o);
    Rational n = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d_);
    if (n == 0) throw std::domain_error("QuadReal division by zero");
    QuadReal inv = o.conjugate();
    inv.a_ /= n;
    inv.b_ /= n;
    return *this *= inv;
}

QuadReal QuadReal::conjugate() const {
    QuadReal r = *this;
    r.b_ = -r.b_;
    return r;
}

std::string QuadReal::to_string() const {
    if (b_ == 0) return ccf::to_string(a_);
    std::string s;
    if (a_ != 0) s = ccf::to_string(a_) + (b_ > 0 ? "+" : "");
    s += ccf::to_string(b_) + "*sqrt(" + d_.get_str() + ")";
    return s;
}

double QuadReal::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

void QuadReal::bounds(unsigned bits, Rational& lo, Rational& hi) const {
    if (b_ == 0) {
        lo = hi = a_;
        return;
    }
    Rational slo, shi;
    sqrt_bounds(Rational(d_), bits, slo, shi);
    Rational x = b_ * slo;
    Rational y = b_ * shi;
    lo = a_ + (x < y ? x : y);
    hi = a_ + (x < y ? y : x);
}

QuadReal QuadReal::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw InputError("empty exact real");
    auto sq = s.find("sqrt(");
    if (sq == std::string::npos) return QuadReal(parse_rational(s));
    auto close = s.find(')', sq);
    if (close == std::string::npos || close + 1 != s.size())
        throw InputError("malformed exact real '" + std::string(text) + "'");
    Integer d(s.substr(sq + 5, close - sq - 5), 10);
    std::string head = s.substr(0, sq);
    // head is "", "-", "a+", "a-", "b*", "a+b*", "a-b*"
    Rational b = 1;
    Rational a = 0;
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
        // split a and b at the last +/- that is not a leading sign or exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = head.size(); i-- > 1;) {
            if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' && head[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            b = parse_rational(head);
        } else {
            a = parse_rational(head.substr(0, split));
            b = parse_rational(head.substr(split));
        }
    } else if (head == "-") {
        b = -1;
    } else if (!head.empty()) {
        char last = head.back();
        if (last != '+' && last != '-') throw InputError("malformed exact real '" + std::string(text) + "'");
        head.pop_back();
        a = parse_rational(head);
        if (last == '-') b = -1;
    }
    return QuadReal(a, b, d);
}

int compare(const QuadReal& x, const QuadReal& y) {
    if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) return (x - y).sign();
    for (unsigned bits = 64;; bits *= 2) {
        Rational xl, xh, yl, yh;
        x.bounds(bits, xl, xh);
        y.bounds(bits, yl, yh);
        if (xh < yl) return -1;
        if (xl > yh) return 1;
    }
}

int sign_sqrt_minus(const QuadReal& x, const QuadReal& y) {
    if (x.sign() < 0) throw std::domain_error("sqrt of a negative number");
    if (y.sign() < 0) return 1;
    // sqrt(x) vs y >= 0: compare x with y^2
    return (x - y * y).sign();
}

int sign_sqrt_sum(const QuadReal& x, const QuadReal& y, const QuadReal& w) {
    if (x.sign() < 0 || y.sign() < 0 || w.sign() < 0) throw std::domain_error("sqrt of a negative number");
    // sqrt(x)+sqrt(y) vs sqrt(w)  <=>  2 sqrt(xy) vs w - x - y
    QuadReal s = w - x - y;
    if (s.sign() < 0) return 1;
    QuadReal lhs = QuadReal(4) * x * y;
    return (lhs - s * s).sign();
}

}  // namespace ccf
