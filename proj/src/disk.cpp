#include "ccf/disk.hpp"

#include <stdexcept>

namespace ccf {

namespace {

QuadReal radicand(Ring r) { return QuadReal(Rational(info(r).radicand)); }

}  // namespace

Disk Disk::around(const FieldElement& center, const QuadReal& radius_sq, bool closed) {
    if (radius_sq.sign() <= 0) throw std::domain_error("disk radius must be positive");
    return {center.ring(), QuadReal(center.re()), QuadReal(center.eta()), radius_sq, closed};
}

QuadReal Disk::center_abs_sq() const { return cx * cx + radicand(ring) * ceta * ceta; }

Disk Disk::translated(const FieldElement& t) const {
    Disk d = *this;
    d.cx += QuadReal(t.re());
    d.ceta += QuadReal(t.eta());
    return d;
}

QuadReal Disk::excess(const FieldElement& z) const {
    QuadReal dx = QuadReal(z.re()) - cx;
    QuadReal de = QuadReal(z.eta()) - ceta;
    return dx * dx + radicand(ring) * de * de - radius_sq;
}

bool Disk::contains(const FieldElement& z) const {
    int s = excess(z).sign();
    return closed ? s <= 0 : s < 0;
}

std::string Disk::to_string() const {
    std::string c = "(" + cx.to_string() + ") + i*sqrt(" + std::to_string(info(ring).radicand) + ")*(" + ceta.to_string() + ")";
    return std::string(closed ? "closed" : "open") + " disk center " + c + " radius^2 " + radius_sq.to_string();
}

Disk invert_disk(const Disk& d) {
    QuadReal s = d.center_abs_sq() - d.radius_sq;
    if (s.sign() <= 0) throw std::domain_error("disk contains 0 or boundary");
    return {d.ring, d.cx / s, -d.ceta / s, d.radius_sq / (s * s), d.closed};
}

int overlap_sign(const Disk& x, const Disk& y) {
    QuadReal dx = x.cx - y.cx;
    QuadReal de = x.ceta - y.ceta;
    QuadReal dist_sq = dx * dx + radicand(x.ring) * de * de;
    return sign_sqrt_sum(x.radius_sq, y.radius_sq, dist_sq);
}

int reach_sign(const Disk& d, const QuadReal& bound_sq) { return sign_sqrt_sum(d.center_abs_sq(), d.radius_sq, bound_sq); }

}  // namespace ccf
