#include "ccf/algorithm.hpp"

#include "ccf/error.hpp"

#include <algorithm>

namespace ccf {

namespace {

constexpr unsigned kMembershipBitsCap = 1U << 14;

struct Pt {
    Rational x;
    Rational e;
};

using Polygon = std::vector<Pt>;

// Theta in (re, eta) coordinates.
Pt theta_point(Ring r) {
    if (info(r).half) return {Rational(1, 2), Rational(1, 2)};
    return {Rational(0), Rational(1)};
}

Polygon base_parallelogram(Ring r) {
    Pt t = theta_point(r);
    return {{0, 0}, {1, 0}, {t.x + 1, t.e}, {t.x, t.e}};
}

Polygon clip(const Polygon& poly, const HalfPlane& h) {
    Polygon out;
    auto value = [&](const Pt& p) { return Rational(h.re * p.x + h.eta * p.e - h.bound); };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& a = poly[i];
        const Pt& b = poly[(i + 1) % poly.size()];
        Rational va = value(a);
        Rational vb = value(b);
        if (va <= 0) out.push_back(a);
        if ((va < 0 && vb > 0) || (va > 0 && vb < 0)) {
            Rational t = va / (va - vb);
            out.push_back({a.x + t * (b.x - a.x), a.e + t * (b.e - a.e)});
        }
    }
    return out;
}

Polygon clip_all(Polygon poly, const std::vector<HalfPlane>& hs) {
    for (const auto& h : hs) {
        if (poly.empty()) break;
        poly = clip(poly, h);
    }
    return poly;
}

Rational area(const Polygon& poly) {
    Rational s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& a = poly[i];
        const Pt& b = poly[(i + 1) % poly.size()];
        s += a.x * b.e - b.x * a.e;
    }
    return abs(s) / 2;
}

bool is_corner(const RingElement& v) {
    return (v.x() == 0 || v.x() == 1) && (v.y() == 0 || v.y() == 1);
}

// x = Re(w), eta = Re(w * kappa_eta) for w in K or K(z).
FieldElement kappa_eta(Ring r) { return FieldElement::from_coords(r, 0, Rational(-1, info(r).radicand)); }

FieldElement halfplane_kappa(Ring r, const HalfPlane& h) {
    return FieldElement(r, h.re) + kappa_eta(r).scaled(h.eta);
}

bool holds(const HalfPlane& h, const FieldElement& z) {
    Rational v = h.re * z.re() + h.eta * z.eta() - h.bound;
    return h.strict ? v < 0 : v <= 0;
}

bool holds(const DiskConstraint& d, const FieldElement& z) {
    Rational v = abs_sq(z - d.center) - d.radius_sq;
    bool in = d.strict ? v < 0 : v <= 0;
    return in == d.inside;
}

// -1: certainly false on the box, +1: certainly true, 0: undecided.
int holds(const HalfPlane& h, const Interval& x, const Interval& e) {
    Interval v = Interval(h.re) * x + Interval(h.eta) * e - Interval(h.bound);
    if (h.strict ? v.hi < 0 : v.hi <= 0) return 1;
    if (h.strict ? v.lo >= 0 : v.lo > 0) return -1;
    return 0;
}

int holds(const DiskConstraint& d, const Interval& x, const Interval& e, Ring r) {
    Interval dist = sqr(x - Interval(d.center.re())) +
                    Interval(Rational(info(r).radicand)) * sqr(e - Interval(d.center.eta())) -
                    Interval(d.radius_sq);
    int in = 0;
    if (d.strict ? dist.hi < 0 : dist.hi <= 0) in = 1;
    if (d.strict ? dist.lo >= 0 : dist.lo > 0) in = -1;
    return d.inside ? in : -in;
}

// floor(Re(w * kappa)) for a surd w.
Integer surd_floor(const SurdElement& w, const FieldElement& kappa, SurdEvaluator& ev) {
    SurdElement t = w * SurdElement::constant(w.context(), kappa);
    ComplexBox b = ev.box(t, Rational(1, 4));
    Integer k = floor(b.re.mid());
    for (;;) {
        if (ev.sign_re(t - SurdElement::constant(w.context(), FieldElement(w.ring(), Rational(k)))) < 0) {
            k -= 1;
            continue;
        }
        if (ev.sign_re(t - SurdElement::constant(w.context(), FieldElement(w.ring(), Rational(k + 1)))) >= 0) {
            k += 1;
            continue;
        }
        return k;
    }
}

FieldElement basis_kappa_v(Ring r) {
    FieldElement k = kappa_eta(r);
    return info(r).half ? k.scaled(2) : k;
}

FieldElement basis_kappa_u(Ring r) {
    FieldElement one(r, 1);
    return info(r).half ? one - kappa_eta(r) : one;
}

RingElement lex_best(std::vector<RingElement> cands, const std::function<int(const RingElement&, const RingElement&)>& farther,
                     bool* tie) {
    // farther(a, b) = sign(|w - a|^2 - |w - b|^2)
    RingElement best = cands.front();
    bool tied = false;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        int s = farther(cands[i], best);
        if (s < 0) {
            best = cands[i];
            tied = false;
        } else if (s == 0) {
            tied = true;
            if (lex_less(cands[i], best)) best = cands[i];
        }
    }
    if (tie) *tie = tied;
    return best;
}

}  // namespace

std::string_view tie_rule_name(TieRule rule) {
    switch (rule) {
        case TieRule::LexMin: return "lexicographic-min";
    }
    return "?";
}

PartitionGeometry analyze_partition(const PartitionSpec& spec) {
    PartitionGeometry g;
    const Polygon base = base_parallelogram(spec.ring);
    const Rational base_area = area(base);
    const Rational D(info(spec.ring).radicand);
    const Pt th = theta_point(spec.ring);
    bool has_disks = false;
    bool has_strict = false;
    std::vector<Polygon> polys;
    Rational total = 0;
    g.radius_sq = 0;
    for (const auto& cell : spec.cells) {
        if (!is_corner(cell.vertex)) throw InputError("partition vertex " + cell.vertex.to_string() + " is not a corner of the base parallelogram");
        Polygon p = clip_all(base, cell.halfplanes);
        polys.push_back(p);
        total += area(p);
        for (const auto& h : cell.halfplanes) has_strict = has_strict || h.strict;
        Pt v{Rational(cell.vertex.x()) + Rational(cell.vertex.y()) * th.x, Rational(cell.vertex.y()) * th.e};
        Rational far = 0;
        for (const auto& q : p) far = std::max(far, Rational((q.x - v.x) * (q.x - v.x) + D * (q.e - v.e) * (q.e - v.e)));
        for (const auto& d : cell.disks) {
            has_disks = true;
            if (d.inside && d.center.re() == v.x && d.center.eta() == v.e) far = std::min(far, d.radius_sq);
        }
        if (!p.empty()) g.radius_sq = std::max(g.radius_sq, far);
    }
    if (has_disks) {
        g.validated = false;
        g.note = "disk constraints present: cover and disjointness not proven";
        return g;
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t k = i + 1; k < polys.size(); ++k)
            if (area(clip_all(polys[i], spec.cells[k].halfplanes)) > 0)
                throw InputError("partition cells " + std::to_string(i) + " and " + std::to_string(k) + " overlap");
    if (total != base_area) throw InputError("partition cells do not cover the base parallelogram");
    g.validated = true;
    g.note = has_strict ? "cover proven up to boundary segments of strict constraints" : "cover and disjointness proven";
    return g;
}

AlgorithmSpec AlgorithmSpec::nearest_integer(Ring ring, TieRule tie) {
    AlgorithmSpec a;
    a.kind_ = Kind::NearestInteger;
    a.ring_ = ring;
    a.tie_ = tie;
    a.radius_sq_ = covering_radius_sq(ring);
    a.radius_ = covering_radius(ring);
    a.j_radius_ = a.radius_;
    a.geometry_.radius_sq = covering_radius_sq(ring);
    a.geometry_.validated = true;
    a.geometry_.note = "Voronoi cells";
    return a;
}

AlgorithmSpec AlgorithmSpec::partition(PartitionSpec spec) {
    if (spec.cells.empty()) throw InputError("partition has no cells");
    AlgorithmSpec a;
    a.kind_ = Kind::Partition;
    a.ring_ = spec.ring;
    a.geometry_ = analyze_partition(spec);
    a.radius_sq_ = a.geometry_.radius_sq;
    a.radius_ = QuadReal::sqrt_of(a.geometry_.radius_sq);
    if (spec.radius) {
        if (spec.radius->sign() <= 0) throw InputError("partition radius must be positive");
        if (*spec.radius * *spec.radius < QuadReal(a.geometry_.radius_sq))
            throw InputError("declared radius " + spec.radius->to_string() + " is smaller than the cells require (radius^2 " +
                             to_string(a.geometry_.radius_sq) + ")");
        a.radius_ = *spec.radius;
        a.radius_sq_ = *spec.radius * *spec.radius;
    }
    a.j_radius_ = a.radius_;
    if (spec.j_radius) {
        if (spec.j_radius->sign() <= 0) throw InputError("partition j_radius must be positive");
        if (*spec.j_radius * *spec.j_radius < QuadReal(a.geometry_.radius_sq))
            throw InputError("declared j_radius is smaller than the cells require");
        a.j_radius_ = *spec.j_radius;
    }
    a.partition_ = std::move(spec);
    return a;
}

std::string AlgorithmSpec::name() const { return kind_ == Kind::NearestInteger ? "nearest" : "partition"; }

RingElement AlgorithmSpec::partition_vertex(const FieldElement& zeta) const {
    for (const auto& cell : partition_.cells) {
        bool in = std::all_of(cell.halfplanes.begin(), cell.halfplanes.end(), [&](const HalfPlane& h) { return holds(h, zeta); }) &&
                  std::all_of(cell.disks.begin(), cell.disks.end(), [&](const DiskConstraint& d) { return holds(d, zeta); });
        if (in) return cell.vertex;
    }
    throw InputError("point " + zeta.to_string() + " of the base parallelogram lies in no partition cell");
}

RingElement AlgorithmSpec::apply(const FieldElement& z, bool* tie) const {
    if (z.ring() != ring_) throw std::invalid_argument("ring mismatch in apply");
    if (kind_ == Kind::Partition) {
        if (tie) *tie = false;
        RingElement base(ring_, floor(z.u()), floor(z.v()));
        return base + partition_vertex(z - base.to_field());
    }
    auto cands = nearest_lattice_points(z.to_box(64), ring_);
    return lex_best(cands, [&](const RingElement& a, const RingElement& b) { return compare_distance(z, b, a); }, tie);
}

RingElement AlgorithmSpec::apply(const SurdElement& w, SurdEvaluator& ev, bool* tie) const {
    if (w.in_field()) return apply(w.alpha(), tie);
    if (kind_ == Kind::Partition) {
        if (tie) *tie = false;
        RingElement base(ring_, surd_floor(w, basis_kappa_u(ring_), ev), surd_floor(w, basis_kappa_v(ring_), ev));
        SurdElement zeta = w - base;
        for (const auto& cell : partition_.cells) {
            bool in = true;
            for (const auto& h : cell.halfplanes) {
                SurdElement t = zeta * SurdElement::constant(w.context(), halfplane_kappa(ring_, h)) -
                                SurdElement::constant(w.context(), FieldElement(ring_, h.bound));
                int s = ev.sign_re(t);
                if (h.strict ? s >= 0 : s > 0) {
                    in = false;
                    break;
                }
            }
            for (std::size_t i = 0; in && i < cell.disks.size(); ++i) {
                int verdict = 0;
                for (unsigned bits = 128; verdict == 0 && bits <= kMembershipBitsCap; bits *= 2) {
                    ComplexBox b = ev.box_at(zeta, bits);
                    Interval e = b.im / sqrt_radicand(ring_, bits);
                    verdict = holds(cell.disks[i], b.re, e, ring_);
                }
                if (verdict == 0) throw BudgetExhausted("partition disk membership undecided for " + w.to_string());
                in = verdict > 0;
            }
            if (in) return base + cell.vertex;
        }
        throw InputError("surd " + w.to_string() + " lies in no partition cell");
    }
    ComplexBox b = ev.box(w, Rational(1, 16));
    auto cands = nearest_lattice_points(b, ring_);
    if (cands.size() == 1) {
        if (tie) *tie = false;
        return cands.front();
    }
    const SurdContextPtr& ctx = w.context();
    return lex_best(
        cands,
        [&](const RingElement& a, const RingElement& c) {
            // |w-a|^2 - |w-c|^2 = 2 Re(w conj(c-a)) + |a|^2 - |c|^2
            SurdElement t = w * SurdElement::constant(ctx, (c - a).conj().to_field().scaled(2)) +
                            SurdElement::constant(ctx, FieldElement(ring_, Rational(a.norm() - c.norm())));
            return ev.sign_re(t);
        },
        tie);
}

std::optional<RingElement> AlgorithmSpec::apply(const ComplexBox& z, unsigned bits, bool* tie) const {
    if (tie) *tie = false;
    const long D = info(ring_).radicand;
    if (z.is_point() && (D == 1 || z.im.lo == 0)) {
        Rational eta = D == 1 ? z.im.lo : Rational(0);
        return apply(FieldElement::from_coords(ring_, z.re.lo, eta), tie);
    }
    if (z.width() > 64) return std::nullopt;
    if (kind_ == Kind::NearestInteger) {
        auto cands = nearest_lattice_points(z, ring_);
        if (cands.size() == 1) return cands.front();
        if (z.is_point()) {
            if (tie) *tie = true;
            return cands.front();
        }
        return std::nullopt;
    }
    const bool half = info(ring_).half;
    Interval eta = z.im / sqrt_radicand(ring_, bits);
    Interval v = half ? eta + eta : eta;
    Interval u = half ? z.re - eta : z.re;
    Integer fu = floor(u.lo), fv = floor(v.lo);
    if (fu != floor(u.hi) || fv != floor(v.hi)) return std::nullopt;
    RingElement base(ring_, fu, fv);
    FieldElement bf = base.to_field();
    Interval x = z.re - Interval(bf.re());
    Interval e = eta - Interval(bf.eta());
    for (const auto& cell : partition_.cells) {
        int verdict = 1;
        for (const auto& h : cell.halfplanes) verdict = std::min(verdict, holds(h, x, e));
        for (const auto& d : cell.disks) verdict = std::min(verdict, holds(d, x, e, ring_));
        if (verdict > 0) return base + cell.vertex;
        if (verdict == 0) return std::nullopt;
    }
    throw InputError("box " + z.to_string() + " lies in no partition cell");
}

}  // namespace ccf
