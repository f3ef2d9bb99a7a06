#include "ccf/ring.hpp"

#include "ccf/error.hpp"

#include <algorithm>
#include <cmath>

namespace ccf {

namespace {

constexpr std::array<RingInfo, 6> kInfo{{
    {"Zi", 1, false, 0, -1},
    {"Zi2", 2, false, 0, -2},
    {"Zi3", 3, false, 0, -3},
    {"E", 3, true, 1, -1},
    {"E7", 7, true, 1, -2},
    {"E11", 11, true, 1, -3},
}};

void check_same(Ring a, Ring b) {
    if (a != b) throw std::invalid_argument("ring mismatch: " + std::string(ring_name(a)) + " vs " + std::string(ring_name(b)));
}

// Splits "x,y@RING" into its coordinate strings and ring.
void split_element(std::string_view text, std::string& xs, std::string& ys, std::optional<Ring>& ring) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    auto at = s.find('@');
    std::string coords = s.substr(0, at);
    if (at != std::string::npos) ring = parse_ring(s.substr(at + 1));
    auto comma = coords.find(',');
    if (comma == std::string::npos) {
        xs = coords;
        ys = "0";
    } else {
        xs = coords.substr(0, comma);
        ys = coords.substr(comma + 1);
    }
    if (xs.empty() || ys.empty()) throw InputError("malformed ring element '" + std::string(text) + "'");
}

}  // namespace

const RingInfo& info(Ring r) { return kInfo[static_cast<std::size_t>(r)]; }

std::string_view ring_name(Ring r) { return info(r).name; }

Ring parse_ring(std::string_view name) {
    for (Ring r : kAllRings)
        if (ring_name(r) == name) return r;
    throw InputError("unknown ring '" + std::string(name) + "' (expected Zi, Zi2, Zi3, E, E7 or E11)");
}

// ---- RingElement ----

Integer RingElement::norm() const {
    const RingInfo& ri = info(ring_);
    // |x + y theta|^2 = x^2 + s x y - t y^2
    return x_ * x_ + ri.theta_lin * x_ * y_ - ri.theta_const * y_ * y_;
}

RingElement RingElement::conj() const {
    // conj(theta) = s - theta
    return {ring_, x_ + info(ring_).theta_lin * y_, -y_};
}

FieldElement RingElement::to_field() const { return {ring_, Rational(x_), Rational(y_)}; }

RingElement& RingElement::operator+=(const RingElement& o) {
    check_same(ring_, o.ring_);
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    check_same(ring_, o.ring_);
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) {
    check_same(ring_, o.ring_);
    const RingInfo& ri = info(ring_);
    Integer yy = y_ * o.y_;
    Integer x = x_ * o.x_ + ri.theta_const * yy;
    Integer y = x_ * o.y_ + y_ * o.x_ + ri.theta_lin * yy;
    x_ = std::move(x);
    y_ = std::move(y);
    return *this;
}

std::string RingElement::to_string() const {
    return x_.get_str() + "," + y_.get_str() + "@" + std::string(ring_name(ring_));
}

RingElement RingElement::parse(std::string_view text, std::optional<Ring> expected) {
    std::string xs, ys;
    std::optional<Ring> ring;
    split_element(text, xs, ys, ring);
    if (!ring) ring = expected;
    if (!ring) throw InputError("ring element '" + std::string(text) + "' lacks '@RING'");
    if (expected && *expected != *ring)
        throw InputError("ring element '" + std::string(text) + "' is not in ring " + std::string(ring_name(*expected)));
    Rational x = parse_rational(xs);
    Rational y = parse_rational(ys);
    if (x.get_den() != 1 || y.get_den() != 1)
        throw InputError("ring element '" + std::string(text) + "' has non-integer coordinates");
    return {*ring, x.get_num(), y.get_num()};
}

std::size_t RingElementHash::operator()(const RingElement& e) const {
    std::size_t h = std::hash<std::string>{}(e.x().get_str(16));
    return h * 1000003u ^ std::hash<std::string>{}(e.y().get_str(16)) ^ static_cast<std::size_t>(e.ring());
}

// ---- FieldElement ----

FieldElement FieldElement::from_coords(Ring ring, const Rational& re, const Rational& eta) {
    if (info(ring).half) {
        Rational v = 2 * eta;
        return {ring, re - eta, v};
    }
    return {ring, re, eta};
}

Rational FieldElement::re() const { return info(ring_).half ? Rational(u_ + v_ / 2) : u_; }

Rational FieldElement::eta() const { return info(ring_).half ? Rational(v_ / 2) : v_; }

Rational FieldElement::norm() const {
    const RingInfo& ri = info(ring_);
    return u_ * u_ + ri.theta_lin * u_ * v_ - ri.theta_const * v_ * v_;
}

FieldElement FieldElement::conj() const { return {ring_, u_ + info(ring_).theta_lin * v_, -v_}; }

FieldElement FieldElement::inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("division by zero in K");
    FieldElement c = conj();
    return {ring_, c.u_ / n, c.v_ / n};
}

RingElement FieldElement::to_ring() const {
    if (!is_integral()) throw std::domain_error("field element " + to_string() + " is not integral");
    return {ring_, u_.get_num(), v_.get_num()};
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(ring_, o.ring_);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(ring_, o.ring_);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(ring_, o.ring_);
    const RingInfo& ri = info(ring_);
    Rational vv = v_ * o.v_;
    Rational u = u_ * o.u_ + ri.theta_const * vv;
    Rational v = u_ * o.v_ + v_ * o.u_ + ri.theta_lin * vv;
    u_ = std::move(u);
    v_ = std::move(v);
    return *this;
}

ComplexBox FieldElement::to_box(unsigned bits) const {
    Interval im = Interval(eta()) * sqrt_radicand(ring_, bits);
    return {Interval(re()), im};
}

std::string FieldElement::to_string() const {
    return ccf::to_string(u_) + "," + ccf::to_string(v_) + "@" + std::string(ring_name(ring_));
}

FieldElement FieldElement::parse(std::string_view text, std::optional<Ring> expected) {
    std::string xs, ys;
    std::optional<Ring> ring;
    split_element(text, xs, ys, ring);
    if (!ring) ring = expected;
    if (!ring) throw InputError("field element '" + std::string(text) + "' lacks '@RING'");
    if (expected && *expected != *ring)
        throw InputError("field element '" + std::string(text) + "' is not over ring " + std::string(ring_name(*expected)));
    return {*ring, parse_rational(xs), parse_rational(ys)};
}

Integer abs_sq(const RingElement& e) { return e.norm(); }
Rational abs_sq(const FieldElement& e) { return e.norm(); }

QuadReal covering_radius(Ring r) { return QuadReal::sqrt_of(covering_radius_sq(r)); }

Rational covering_radius_sq(Ring r) {
    const RingInfo& ri = info(r);
    if (!ri.half) {
        Rational q(1 + ri.radicand, 4);
        q.canonicalize();
        return q;
    }
    Rational t(ri.radicand);
    return (t + 1) * (t + 1) / (16 * t);
}

Interval sqrt_radicand(Ring r, unsigned bits) {
    Rational lo, hi;
    sqrt_bounds(Rational(info(r).radicand), bits, lo, hi);
    return {lo, hi};
}

int compare_distance(const FieldElement& w, const RingElement& a, const RingElement& b) {
    return sign(abs_sq(w - b.to_field()) - abs_sq(w - a.to_field()));
}

std::vector<RingElement> nearest_lattice_points(const ComplexBox& box, Ring ring) {
    const RingInfo& ri = info(ring);
    if (box.width() > 64) throw std::domain_error("box too wide for nearest-point search");

    const Rational cr = box.re.mid();
    const Rational ci = box.im.mid();
    const double half_diag = std::hypot(to_double(box.re.width()) / 2, to_double(box.im.width()) / 2);
    const double reach = half_diag + std::sqrt(to_double(covering_radius_sq(ring))) + 1e-6;

    // Imaginary part of x + y theta is y * spacing.
    const Rational im_scale = ri.half ? Rational(1, 2) : Rational(1);
    const double spacing = to_double(im_scale) * std::sqrt(static_cast<double>(ri.radicand));
    Interval sq64 = sqrt_radicand(ring, 64);
    Integer y_mid = floor(ci / (im_scale * sq64.lo));
    long ry = static_cast<long>(std::ceil(reach / spacing)) + 1;
    long rx = static_cast<long>(std::ceil(reach)) + 1;

    std::vector<RingElement> cand;
    for (long dy = -ry - 1; dy <= ry; ++dy) {
        Integer y = y_mid + dy;
        Rational ycoef = im_scale * Rational(y);
        unsigned bits = 64 + static_cast<unsigned>(bit_length(y));
        double dim = to_double((Interval(ycoef) * sqrt_radicand(ring, bits)).mid() - ci);
        if (std::abs(dim) > reach) continue;
        Rational shift = ri.half ? Rational(y, 2) : Rational(0);
        shift.canonicalize();
        Integer x_mid = floor(cr - shift);
        for (long dx = -rx; dx <= rx; ++dx) {
            Integer x = x_mid + dx;
            double dre = to_double(Rational(x) + shift - cr);
            if (dre * dre + dim * dim <= reach * reach) cand.emplace_back(ring, x, y);
        }
    }

    // A candidate farther from the box center than the closest one by more
    // than the box diameter is beaten everywhere on the box.
    const double cx = to_double(cr), cy = to_double(ci);
    const double sd = std::sqrt(static_cast<double>(ri.radicand));
    std::vector<double> dist(cand.size());
    double best = 1e300;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        FieldElement f = cand[i].to_field();
        double dx = to_double(f.re()) - cx, dy = to_double(f.eta()) * sd - cy;
        dist[i] = std::sqrt(dx * dx + dy * dy);
        best = std::min(best, dist[i]);
    }
    const double slack = 2 * half_diag + 1e-9 * (1 + std::abs(cx) + std::abs(cy));
    std::vector<RingElement> near;
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (dist[i] <= best + slack) near.push_back(cand[i]);
    cand.swap(near);

    // a is dropped when some b is strictly closer on the whole box. The
    // difference of squared distances is affine in z, so its minimum over the
    // box sits at one corner.
    const Rational D(ri.radicand);
    std::vector<Integer> norms;
    norms.reserve(cand.size());
    for (const auto& c : cand) norms.push_back(c.norm());
    std::vector<RingElement> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool dominated = false;
        for (std::size_t k = 0; k < cand.size() && !dominated; ++k) {
            if (k == i) continue;
            FieldElement d = (cand[k] - cand[i]).to_field();
            Rational dr = d.re();
            Rational de = d.eta();
            const Rational& zr = dr > 0 ? box.re.lo : box.re.hi;
            const Rational& zi = de > 0 ? box.im.lo : box.im.hi;
            Rational rat = 2 * zr * dr + Rational(norms[i] - norms[k]);
            Rational irr = 2 * zi * de;
            double fr = to_double(rat), fi = to_double(irr) * sd;
            double tol = 1e-12 * (std::abs(fr) + std::abs(fi)) + 1e-300;
            if (fr + fi > tol) {
                dominated = true;
            } else if (fr + fi >= -tol) {
                dominated = QuadReal(rat, irr, ri.radicand).sign() > 0;
            }
        }
        if (!dominated) out.push_back(cand[i]);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace ccf
