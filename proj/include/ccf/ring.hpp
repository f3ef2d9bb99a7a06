#pragma once

// The six discrete subrings of C that admit a lattice point within distance 1
// of every complex number, stored uniformly as Z + Z*theta.

#include "ccf/interval.hpp"
#include "ccf/numeric.hpp"
#include "ccf/quad_real.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccf {

/// Zi, Zi2, Zi3: Z[i sqrt k] with theta = i sqrt k.
/// E, E7, E11: Z[(1 + i sqrt tau)/2] with theta = (1 + i sqrt tau)/2.
enum class Ring { Zi, Zi2, Zi3, E, E7, E11 };

inline constexpr std::array<Ring, 6> kAllRings{Ring::Zi, Ring::Zi2, Ring::Zi3, Ring::E, Ring::E7, Ring::E11};

struct RingInfo {
    std::string_view name;
    long radicand;   ///< D: K = Q(sqrt(-D)), imaginary parts are multiples of sqrt D
    bool half;       ///< theta = (1 + i sqrt D)/2 rather than i sqrt D
    long theta_lin;  ///< theta^2 = theta_lin * theta + theta_const
    long theta_const;
};

const RingInfo& info(Ring r);
std::string_view ring_name(Ring r);
Ring parse_ring(std::string_view name);

class FieldElement;

/// x + y*theta with integer coordinates.
class RingElement {
public:
    RingElement() = default;
    RingElement(Ring ring, Integer x, Integer y = 0) : x_(std::move(x)), y_(std::move(y)), ring_(ring) {}

    static RingElement theta(Ring ring) { return {ring, 0, 1}; }

    const Integer& x() const { return x_; }
    const Integer& y() const { return y_; }
    Ring ring() const { return ring_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    /// Exact |value|^2; always an integer for these rings.
    Integer norm() const;
    RingElement conj() const;
    FieldElement to_field() const;

    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
    RingElement operator-() const { return {ring_, -x_, -y_}; }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.ring_ == b.ring_ && a.x_ == b.x_ && a.y_ == b.y_;
    }
    /// Lexicographic order on (x, y); the default tie rule.
    friend bool lex_less(const RingElement& a, const RingElement& b) {
        return a.x_ < b.x_ || (a.x_ == b.x_ && a.y_ < b.y_);
    }

    /// "x,y@RING"
    std::string to_string() const;
    static RingElement parse(std::string_view text, std::optional<Ring> expected = std::nullopt);

private:
    Integer x_ = 0;
    Integer y_ = 0;
    Ring ring_ = Ring::Zi;
};

bool lex_less(const RingElement& a, const RingElement& b);

/// u + v*theta with rational coordinates: an element of K = Frac(Gamma).
///
/// The complex value is re() + i*eta()*sqrt(D); geometry code works in the
/// (re, eta) coordinates where every lattice line has rational coefficients.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Ring ring, Rational u, Rational v = 0) : u_(std::move(u)), v_(std::move(v)), ring_(ring) {}

    static FieldElement from_coords(Ring ring, const Rational& re, const Rational& eta);

    const Rational& u() const { return u_; }
    const Rational& v() const { return v_; }
    Ring ring() const { return ring_; }

    Rational re() const;
    Rational eta() const;

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    Rational norm() const;
    FieldElement conj() const;
    FieldElement inverse() const;
    bool is_integral() const { return u_.get_den() == 1 && v_.get_den() == 1; }
    RingElement to_ring() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    FieldElement operator-() const { return {ring_, -u_, -v_}; }
    FieldElement scaled(const Rational& q) const { return {ring_, u_ * q, v_ * q}; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.ring_ == b.ring_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

    /// Containment-correct box around the embedded complex value.
    ComplexBox to_box(unsigned bits) const;
    std::string to_string() const;
    static FieldElement parse(std::string_view text, std::optional<Ring> expected = std::nullopt);

private:
    Rational u_ = 0;
    Rational v_ = 0;
    Ring ring_ = Ring::Zi;
};

Integer abs_sq(const RingElement& e);
Rational abs_sq(const FieldElement& e);

/// Circumradius of the nearest-integer cell: sqrt(1+k)/2 or (tau+1)/(4 sqrt tau).
QuadReal covering_radius(Ring r);
Rational covering_radius_sq(Ring r);

/// Interval enclosing sqrt(D) at the given precision.
Interval sqrt_radicand(Ring r, unsigned bits);

/// Every ring element that is nearest to some point of the box, plus possibly
/// a few that only tie on the boundary. Sorted lexicographically. A singleton
/// means the box resolves the nearest point.
std::vector<RingElement> nearest_lattice_points(const ComplexBox& box, Ring ring);

/// Sign of |w - b|^2 - |w - a|^2 for an exact complex point w = (re, eta).
int compare_distance(const FieldElement& w, const RingElement& a, const RingElement& b);

struct RingElementHash {
    std::size_t operator()(const RingElement& e) const;
};

}  // namespace ccf
