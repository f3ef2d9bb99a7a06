#pragma once

#include "ccf/numeric.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace ccf {

/// Exact real number a + b*sqrt(d) with a, b rational and d a square-free
/// integer > 1 (or d = 1 with b = 0 for plain rationals).
///
/// Binary operations require both operands to live in the same field
/// Q(sqrt d); a rational operand mixes with anything. Mixing two different
/// irrational fields throws std::domain_error.
class QuadReal;

/// Sign of x - y. Unlike arithmetic, comparison also works across two
/// different fields: 1, sqrt(d) and sqrt(f) are linearly independent over Q,
/// so the difference is nonzero unless both are the same rational, and
/// interval refinement terminates.
int compare(const QuadReal& x, const QuadReal& y);

class QuadReal {
public:
    QuadReal() = default;
    QuadReal(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    QuadReal(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
    QuadReal(const Rational& a, const Rational& b, const Integer& d);

    /// sqrt(q) for rational q >= 0, as an exact element of Q(sqrt d).
    static QuadReal sqrt_of(const Rational& q);

    /// Parses "p/q", "p/q+r/s*sqrt(d)", "r/s*sqrt(d)" or "sqrt(d)".
    static QuadReal parse(std::string_view text);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Integer& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    int sign() const;

    QuadReal operator-() const;
    QuadReal& operator+=(const QuadReal& o);
    QuadReal& operator-=(const QuadReal& o);
    QuadReal& operator*=(const QuadReal& o);
    QuadReal& operator/=(const QuadReal& o);

    friend QuadReal operator+(QuadReal x, const QuadReal& y) { return x += y; }
    friend QuadReal operator-(QuadReal x, const QuadReal& y) { return x -= y; }
    friend QuadReal operator*(QuadReal x, const QuadReal& y) { return x *= y; }
    friend QuadReal operator/(QuadReal x, const QuadReal& y) { return x /= y; }

    friend bool operator==(const QuadReal& x, const QuadReal& y) { return compare(x, y) == 0; }
    friend std::strong_ordering operator<=>(const QuadReal& x, const QuadReal& y) {
        int s = compare(x, y);
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Galois conjugate a - b*sqrt(d).
    QuadReal conjugate() const;

    std::string to_string() const;
    double to_double() const;

    /// Rational bounds lo <= value <= hi.
    void bounds(unsigned bits, Rational& lo, Rational& hi) const;

private:
    void normalize();
    void unify(const QuadReal& o);

    Rational a_ = 0;
    Rational b_ = 0;
    Integer d_ = 1;
};

/// Sign of sqrt(x) + sqrt(y) - sqrt(w) for non-negative x, y, w in one
/// quadratic field, decided by the usual squaring argument.
int sign_sqrt_sum(const QuadReal& x, const QuadReal& y, const QuadReal& w);

/// Sign of sqrt(x) - y for x >= 0.
int sign_sqrt_minus(const QuadReal& x, const QuadReal& y);

}  // namespace ccf
