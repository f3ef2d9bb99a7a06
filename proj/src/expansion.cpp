#include "ccf/expansion.hpp"

#include "ccf/error.hpp"

#include <algorithm>

namespace ccf {

namespace {

constexpr unsigned kCertifyBitsCap = 2048;

struct Unresolved {
    std::size_t step;
    std::string detail;
};

RingElement sign_unit(Ring r, std::size_t n) { return RingElement(r, n % 2 == 0 ? 1 : -1); }

// |q_n|^-2 (|z_{n+1}| - |q_{n-1}/q_n|)^-1 from an enclosure of z_{n+1}.
std::optional<Rational> sharp_bound(const ComplexBox& next, const QPairState& s) {
    Integer nq = s.q_cur.norm();
    Integer np = s.q_prev.norm();
    if (nq == 0 || np >= nq) return std::nullopt;
    Interval znorm = sqrt(next.abs_sq(), 80);
    Rational q_ratio(np, nq);
    q_ratio.canonicalize();
    Interval ratio = sqrt(Interval(q_ratio), 80);
    Rational gap = znorm.lo - ratio.hi;
    if (gap <= 0) return std::nullopt;
    return round_up(Rational(1) / (Rational(nq) * gap), 64);
}

Tri certify(const ComplexBox& err, const QuadReal& bound) {
    // |err|^2 <= bound^2
    QuadReal b2 = bound * bound;
    Rational lo, hi;
    b2.bounds(256, lo, hi);
    Interval e = err.abs_sq();
    if (e.hi <= lo) return Tri::Yes;
    if (e.lo > hi) return Tri::No;
    return Tri::NotApplicable;
}

// r / (1 - r) for 0 < r < 1.
std::optional<QuadReal> bound_factor(const QuadReal* r) {
    if (!r || r->sign() <= 0 || *r >= QuadReal(1)) return std::nullopt;
    return *r / (QuadReal(1) - *r);
}

void fill_common(ExpansionStep& st, const std::vector<RingElement>& quotients, const std::optional<QuadReal>& factor) {
    st.q_norm = st.qpair.q_cur.norm();
    st.determinant_ok = st.qpair.determinant_ok();
    st.condition_c = condition_c_at(quotients, st.n);
    if (factor && st.qpair.q_prev.norm() < st.q_norm) st.error_bound = *factor / QuadReal(Rational(st.q_norm));
}

}  // namespace

std::string_view tri_name(Tri t) {
    switch (t) {
        case Tri::NotApplicable: return "n/a";
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
    }
    return "?";
}

bool condition_c_check(const RingElement& a_prev, const RingElement& a_next) {
    Integer n = a_next.norm();
    if (a_prev.norm() <= 1 || n <= 1) throw std::domain_error("Condition C needs |a_n| > 1 and |a_{n+1}| > 1");
    if (n >= 4) return true;
    RingElement w = RingElement(a_next.ring(), n - 1) * a_prev + a_next.conj();
    return w.norm() >= n * n;
}

Tri condition_c_at(const std::vector<RingElement>& a, std::size_t n) {
    if (n == 0 || n >= a.size()) return Tri::NotApplicable;
    if (a[n].norm() <= 1) return Tri::No;
    if (n == 1) return Tri::Yes;
    if (a[n - 1].norm() <= 1) return Tri::No;
    return condition_c_check(a[n - 1], a[n]) ? Tri::Yes : Tri::No;
}

std::optional<QuadReal> error_bound(const QPairState& s, const QuadReal& r) {
    auto factor = bound_factor(&r);
    if (!factor) return std::nullopt;
    Integer nq = s.q_cur.norm();
    if (s.q_prev.norm() >= nq) return std::nullopt;
    return *factor / QuadReal(Rational(nq));
}

// ---- ExpansionReport ----

std::vector<RingElement> ExpansionReport::quotients() const {
    std::vector<RingElement> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.a);
    return out;
}

bool ExpansionReport::condition_c_all() const {
    return std::none_of(steps.begin(), steps.end(), [](const ExpansionStep& s) { return s.condition_c == Tri::No; });
}

std::vector<std::size_t> ExpansionReport::monotonicity_violations() const {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n + 1 < steps.size(); ++n)
        if (steps[n + 1].q_norm <= steps[n].q_norm) out.push_back(n);
    return out;
}

bool ExpansionReport::identities_ok() const {
    return std::none_of(steps.begin(), steps.end(), [](const ExpansionStep& s) {
        return !s.determinant_ok || s.residual_ok == Tri::No || s.mobius_ok == Tri::No;
    });
}

// ---- exact mode ----

ExactExpander::ExactExpander(SurdContextPtr ctx, const AlgorithmSpec& alg, ExpansionOptions opts)
    : ctx_(ctx), alg_(&alg), opts_(std::move(opts)), ev_(ctx), z_(SurdElement::z(ctx)), zn_(z_),
      product_(SurdElement::constant(ctx, RingElement(ctx->ring(), 1))), factor_(bound_factor(&alg.radius())) {
    if (alg.ring() != ctx->ring()) throw InputError("algorithm ring differs from the context ring");
}

ExpansionStep ExactExpander::next() {
    bool tie = false;
    RingElement a = alg_->apply(zn_, ev_, &tie);
    return advance(a, tie);
}

ExpansionStep ExactExpander::next_forced(const RingElement& a) { return advance(a, false); }

ExpansionStep ExactExpander::advance(const RingElement& a, bool tie) {
    if (a.ring() != ctx_->ring()) throw InputError("quotient " + a.to_string() + " is in the wrong ring");
    ExpansionStep st;
    st.n = n_;
    st.a = a;
    st.z = zn_;
    st.tie = tie;
    quotients_.push_back(a);
    st.qpair = qp_ ? qpair_step(*qp_, a) : QPairState::init(a);
    qp_ = st.qpair;
    fill_common(st, quotients_, factor_);

    SurdElement next = (zn_ - a).inverse();
    product_ *= next;
    const QPairState& s = st.qpair;
    if (opts_.check_identities) {
        SurdElement residual = z_ * s.q_cur - s.p_cur;
        st.residual_ok = residual * product_ == SurdElement::constant(ctx_, sign_unit(a.ring(), n_)) ? Tri::Yes : Tri::No;
        SurdElement lhs = (next * s.q_cur + s.q_prev) * z_;
        SurdElement rhs = next * s.p_cur + s.p_prev;
        st.mobius_ok = lhs == rhs ? Tri::Yes : Tri::No;
    }
    if (opts_.certify_error && st.error_bound) {
        SurdElement residual = z_ * s.q_cur - s.p_cur;
        // |z - p/q| <= B/N  <=>  |q z - p|^2 N <= B^2 with B = r/(1-r)
        QuadReal scaled = *st.error_bound * QuadReal(Rational(st.q_norm));
        for (unsigned bits = 128; bits <= kCertifyBitsCap && st.error_certified == Tri::NotApplicable; bits *= 2) {
            ComplexBox rb = ev_.box_at(residual, bits);
            Interval n2 = rb.abs_sq() * Interval(Rational(st.q_norm));
            QuadReal b2 = scaled * scaled;
            Rational lo, hi;
            b2.bounds(bits, lo, hi);
            if (n2.hi <= lo) st.error_certified = Tri::Yes;
            else if (n2.lo > hi) st.error_certified = Tri::No;
        }
        st.sharp_bound = sharp_bound(ev_.box_at(next, 128), s);
    }
    zn_ = std::move(next);
    ++n_;
    return st;
}

ExpansionReport expand_exact(const SurdContextPtr& ctx, const AlgorithmSpec& alg, const ExpansionOptions& opts) {
    ExpansionReport rep;
    rep.ring = ctx->ring();
    rep.mode = "exact";
    rep.algorithm = alg.name();
    rep.tie_rule = std::string(tie_rule_name(alg.tie_rule()));
    rep.radius = alg.radius();
    rep.termination = "step-limit";
    ExactExpander ex(ctx, alg, opts);
    for (std::size_t i = 0; i < opts.max_steps; ++i) {
        rep.steps.push_back(ex.next());
        const auto& st = rep.steps.back();
        if (opts.error_target && st.error_bound && *st.error_bound <= QuadReal(*opts.error_target)) {
            rep.termination = "error-target";
            break;
        }
    }
    rep.max_bits = ex.evaluator().max_bits_used();
    return rep;
}

// ---- numeric mode ----

NumericSource NumericSource::point(const Rational& re, const Rational& im) {
    NumericSource s;
    ComplexBox b{Interval(re), Interval(im)};
    s.fn_ = [b](unsigned) { return b; };
    s.text_ = ccf::to_string(re) + (im < 0 ? "-" : "+") + ccf::to_string(abs(im)) + "i";
    return s;
}

NumericSource NumericSource::surd(SurdContextPtr ctx) {
    NumericSource s;
    s.text_ = "root of " + ctx->a().to_string() + " z^2 + " + ctx->b().to_string() + " z + " + ctx->c().to_string();
    s.fn_ = [ctx](unsigned bits) { return ctx->root_box(bits); };
    return s;
}

NumericSource NumericSource::parse(std::string_view text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw InputError("empty complex value");
    Rational re = 0, im = 0;
    if (t.back() == 'i' || t.back() == 'j') {
        t.pop_back();
        // split at the last sign that is not part of an exponent
        std::size_t cut = std::string::npos;
        for (std::size_t k = t.size(); k-- > 1;) {
            if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
                cut = k;
                break;
            }
        }
        std::string rs = cut == std::string::npos ? "" : t.substr(0, cut);
        std::string is = cut == std::string::npos ? t : t.substr(cut);
        if (is.empty() || is == "+") is = "1";
        if (is == "-") is = "-1";
        if (!rs.empty()) re = parse_rational(rs);
        im = parse_rational(is);
    } else {
        re = parse_rational(t);
    }
    return point(re, im);
}

ComplexBox NumericSource::box(unsigned bits) const { return fn_(bits); }

namespace {

ExpansionReport run_numeric(const NumericSource& src, const AlgorithmSpec& alg, const ExpansionOptions& opts, unsigned P) {
    const Ring ring = alg.ring();
    ExpansionReport rep;
    rep.ring = ring;
    rep.mode = "numeric";
    rep.algorithm = alg.name();
    rep.tie_rule = std::string(tie_rule_name(alg.tie_rule()));
    rep.radius = alg.radius();
    rep.termination = "step-limit";
    rep.max_bits = P;

    const std::optional<QuadReal> factor = bound_factor(&alg.radius());
    const ComplexBox z = src.box(P).round_outward(P);
    ComplexBox zn = z;
    ComplexBox product(Interval(1), Interval(0));
    std::vector<RingElement> quotients;
    std::optional<QPairState> qp;
    for (std::size_t n = 0; n < opts.max_steps; ++n) {
        ExpansionStep st;
        st.n = n;
        st.bits = P;
        auto a = alg.apply(zn, P, &st.tie);
        if (!a) throw Unresolved{n, "box " + zn.round_outward(32).to_string() + " straddles a cell boundary"};
        ComplexBox diff = zn - a->to_field().to_box(P);
        if (diff.contains_zero()) throw Unresolved{n, "z_n - a_n may vanish; z may lie in K"};
        ComplexBox next = inverse(diff).round_outward(P);
        st.a = *a;
        st.z_box = zn.round_outward(64);
        quotients.push_back(*a);
        st.qpair = qp ? qpair_step(*qp, *a) : QPairState::init(*a);
        qp = st.qpair;
        fill_common(st, quotients, factor);
        product = (product * next).round_outward(P);
        const QPairState& s = st.qpair;
        if (opts.check_identities) {
            ComplexBox residual = z * s.q_cur.to_field().to_box(P) - s.p_cur.to_field().to_box(P);
            ComplexBox one = residual * product;
            Rational target(n % 2 == 0 ? 1 : -1);
            st.residual_ok = one.re.contains(target) && one.im.contains(0) ? Tri::Yes : Tri::No;
            ComplexBox lhs = (next * s.q_cur.to_field().to_box(P) + s.q_prev.to_field().to_box(P)) * z;
            ComplexBox rhs = next * s.p_cur.to_field().to_box(P) + s.p_prev.to_field().to_box(P);
            st.mobius_ok = intersects(lhs, rhs) ? Tri::Yes : Tri::No;
        }
        if (opts.certify_error && st.error_bound) {
            FieldElement conv = s.p_cur.to_field() / s.q_cur.to_field();
            st.error_certified = certify(z - conv.to_box(P), *st.error_bound);
            st.sharp_bound = sharp_bound(next, s);
        }
        rep.steps.push_back(std::move(st));
        const auto& last = rep.steps.back();
        if (opts.error_target && last.error_bound && *last.error_bound <= QuadReal(*opts.error_target)) {
            rep.termination = "error-target";
            break;
        }
        zn = next;
    }
    return rep;
}

}  // namespace

ExpansionReport expand_numeric(const NumericSource& src, const AlgorithmSpec& alg, const ExpansionOptions& opts) {
    unsigned restarts = 0;
    for (unsigned P = std::max(opts.precision, 32U);; P *= 2) {
        try {
            ExpansionReport rep = run_numeric(src, alg, opts, P);
            rep.restarts = restarts;
            return rep;
        } catch (const Unresolved& u) {
            if (P * 2 > opts.precision_cap)
                throw DigitUnresolved(u.step, u.detail + "; precision cap " + std::to_string(opts.precision_cap) + " bits");
            ++restarts;
        }
    }
}

ExpansionReport expand_quotients(const std::vector<RingElement>& quotients, const SurdContextPtr& ctx,
                                 const ExpansionOptions& opts) {
    if (quotients.empty()) throw InputError("empty quotient stream");
    ExpansionReport rep;
    rep.ring = quotients.front().ring();
    rep.mode = "quotients";
    rep.algorithm = "forced";
    rep.termination = "step-limit";
    if (ctx) {
        AlgorithmSpec none = AlgorithmSpec::nearest_integer(ctx->ring());
        ExpansionOptions o = opts;
        o.certify_error = false;
        ExactExpander ex(ctx, none, o);
        for (const auto& a : quotients) {
            ExpansionStep st = ex.next_forced(a);
            st.error_bound.reset();
            rep.steps.push_back(std::move(st));
        }
        rep.max_bits = ex.evaluator().max_bits_used();
        return rep;
    }
    std::optional<QPairState> qp;
    std::vector<RingElement> seen;
    for (const auto& a : quotients) {
        if (a.ring() != rep.ring) throw InputError("quotient stream mixes rings");
        ExpansionStep st;
        st.n = seen.size();
        st.a = a;
        seen.push_back(a);
        st.qpair = qp ? qpair_step(*qp, a) : QPairState::init(a);
        qp = st.qpair;
        fill_common(st, seen, std::nullopt);
        rep.steps.push_back(std::move(st));
    }
    return rep;
}

}  // namespace ccf
