#pragma once

// Disks with exact centers X + i sqrt(D) H (X, H in one real quadratic
// field) and exact squared radii, and their images under z -> 1/z.

#include "ccf/quad_real.hpp"
#include "ccf/ring.hpp"

#include <string>

namespace ccf {

struct Disk {
    Ring ring = Ring::E;  ///< fixes D in the center coordinates
    QuadReal cx;          ///< real part of the center
    QuadReal ceta;        ///< imaginary part / sqrt(D)
    QuadReal radius_sq;
    bool closed = true;

    static Disk around(const FieldElement& center, const QuadReal& radius_sq, bool closed = true);

    QuadReal center_abs_sq() const;
    Disk translated(const FieldElement& t) const;
    /// |z - center|^2 - radius^2 for an exact point.
    QuadReal excess(const FieldElement& z) const;
    bool contains(const FieldElement& z) const;
    std::string to_string() const;
};

/// {w^-1 : w in d} = B(conj(c) / (|c|^2 - R^2), R / (|c|^2 - R^2)).
/// Throws std::domain_error("disk contains 0 or boundary") if |c| <= R.
Disk invert_disk(const Disk& d);

/// Sign of (R1 + R2) - |c1 - c2|: negative means the closed disks are
/// disjoint, zero means they touch.
int overlap_sign(const Disk& x, const Disk& y);

/// Sign of (|c| + R) - bound where bound = sqrt(bound_sq): negative means d
/// lies in the open disk of that radius about 0.
int reach_sign(const Disk& d, const QuadReal& bound_sq);

}  // namespace ccf
