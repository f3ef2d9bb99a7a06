#include "ccf/lagrange.hpp"

#include "ccf/error.hpp"

#include <unordered_map>

namespace ccf {

namespace {

constexpr unsigned kPullbackBitsCap = 1U << 13;

constexpr unsigned kBoundBits = 64;

// alpha^-1 |2az+b| and alpha^-2 |a|, rounded up.
struct BoundTerms {
    Rational lead;
    Rational tail;
    Rational at(const Integer& q_norm) const { return round_up(lead + tail / Rational(q_norm), kBoundBits); }
};

std::optional<BoundTerms> triple_bound_terms(const SurdContext& ctx, const QuadReal& r) {
    if (r.sign() <= 0 || r >= QuadReal(1)) return std::nullopt;
    QuadReal inv_alpha = r / (QuadReal(1) - r);
    Rational lo, ai;
    inv_alpha.bounds(kBoundBits, lo, ai);
    // |2az + b|^2 = |b^2 - 4ac|, so |2az + b| = N(disc)^(1/4)
    Interval disc_abs = sqrt(sqrt(Interval(Rational(ctx.discriminant().norm())), kBoundBits), kBoundBits);
    Interval a_abs = sqrt(Interval(Rational(ctx.a().norm())), kBoundBits);
    return BoundTerms{ai * disc_abs.hi, ai * ai * a_abs.hi};
}

struct TripleChecker {
    TripleChecker(const SurdContextPtr& c, const QuadReal& radius)
        : ctx(c), disc(c->discriminant()), terms(triple_bound_terms(*c, radius)) {}

    const SurdContextPtr& ctx;
    RingElement disc;
    std::optional<BoundTerms> terms;
    std::optional<RingElement> prev_a;

    TripleStep check(ExpansionStep step, const SurdElement& next) {
        TripleStep t;
        t.triple = triple_at(*ctx, step.qpair);
        if (t.triple.A.is_zero())
            throw InvariantViolation("A_" + std::to_string(step.n) + " vanished; the quadratic has a root in K");
        SurdElement value = next * next * t.triple.A + next * t.triple.B + t.triple.C;
        t.root_ok = value.is_zero();
        t.discriminant_ok = t.triple.B * t.triple.B - RingElement(ctx->ring(), 4) * t.triple.A * t.triple.C == disc;
        t.chain_ok = prev_a ? t.triple.C == *prev_a : t.triple.C == ctx->a();
        prev_a = t.triple.A;
        if (terms && step.q_norm != 0) t.bound = terms->at(step.q_norm);
        if (t.bound) t.within_bound = Rational(t.triple.A.norm()) <= *t.bound * *t.bound;
        t.step = std::move(step);
        return t;
    }
};

}  // namespace

QuadraticTriple triple_at(const SurdContext& ctx, const QPairState& s) {
    const Ring r = ctx.ring();
    const RingElement two(r, 2);
    const RingElement& a = ctx.a();
    const RingElement& b = ctx.b();
    const RingElement& c = ctx.c();
    const RingElement& p = s.p_cur;
    const RingElement& q = s.q_cur;
    const RingElement& p1 = s.p_prev;
    const RingElement& q1 = s.q_prev;
    RingElement A = a * p * p + b * p * q + c * q * q;
    RingElement B = two * a * p * p1 + b * (p * q1 + q * p1) + two * c * q * q1;
    RingElement C = a * p1 * p1 + b * p1 * q1 + c * q1 * q1;
    return {A, B, C};
}

std::optional<Rational> triple_bound(const SurdContext& ctx, const QuadReal& r, const Integer& q_norm) {
    auto terms = triple_bound_terms(ctx, r);
    if (!terms || q_norm == 0) return std::nullopt;
    return terms->at(q_norm);
}

std::vector<TripleStep> expand_with_triples(const SurdContextPtr& ctx, const AlgorithmSpec& alg, std::size_t steps) {
    ExpansionOptions opts;
    opts.certify_error = false;
    ExactExpander ex(ctx, alg, opts);
    TripleChecker checker(ctx, alg.radius());
    std::vector<TripleStep> out;
    for (std::size_t i = 0; i < steps; ++i) {
        ExpansionStep st = ex.next();
        out.push_back(checker.check(std::move(st), ex.current()));
    }
    return out;
}

PeriodResult detect_period(const SurdContextPtr& ctx, const AlgorithmSpec& alg, std::size_t max_steps) {
    ExpansionOptions opts;
    opts.certify_error = false;
    ExactExpander ex(ctx, alg, opts);
    TripleChecker checker(ctx, alg.radius());
    PeriodResult res;
    res.report.ring = ctx->ring();
    res.report.mode = "exact";
    res.report.algorithm = alg.name();
    res.report.tie_rule = std::string(tie_rule_name(alg.tie_rule()));
    res.report.radius = alg.radius();
    res.report.termination = "period";
    res.triples_ok = true;
    res.max_A_norm = 0;

    auto record = [&]() {
        ExpansionStep st = ex.next();
        TripleStep t = checker.check(std::move(st), ex.current());
        res.triples_ok = res.triples_ok && t.root_ok && t.discriminant_ok && t.chain_ok && t.within_bound;
        Integer an = t.triple.A.norm();
        if (an > res.max_A_norm) res.max_A_norm = an;
        if (t.bound && (!res.triples_bound || *t.bound > *res.triples_bound)) res.triples_bound = t.bound;
        res.report.steps.push_back(std::move(t.step));
    };

    std::unordered_map<SurdElement, std::size_t, SurdElementHash> seen;
    for (std::size_t n = 0;; ++n) {
        auto [it, inserted] = seen.emplace(ex.current(), n);
        if (!inserted) {
            res.m = it->second;
            res.k = n - res.m;
            break;
        }
        if (n >= max_steps)
            throw BudgetExhausted("no period found within budget of " + std::to_string(max_steps) + " steps");
        record();
    }
    res.distinct_states = seen.size();
    const SurdElement zm = *res.report.steps[res.m].z;
    res.fingerprint = zm.to_string();
    for (std::size_t i = 0; i < res.m; ++i) res.preperiod.push_back(res.report.steps[i].a);
    for (std::size_t i = res.m; i < res.m + res.k; ++i) res.cycle.push_back(res.report.steps[i].a);

    bool replay = true;
    for (std::size_t i = 0; i < res.k; ++i) {
        record();
        replay = replay && res.report.steps.back().a == res.cycle[i];
    }
    res.replay_verified = replay && ex.current() == zm;
    res.steps_used = res.report.steps.size();
    res.condition_c_all = res.report.condition_c_all();
    res.identities_ok = res.report.identities_ok();
    res.hypothesis_verified = res.condition_c_all && alg.radius() < QuadReal(1);
    if (!res.replay_verified) throw InvariantViolation("period replay failed; the digit map is not a function of z_n");
    return res;
}

QuadraticTriple period_polynomial(const std::vector<RingElement>& preperiod, const std::vector<RingElement>& cycle) {
    if (cycle.empty()) throw InputError("cycle must be nonempty");
    const Ring ring = cycle.front().ring();
    for (const auto& a : preperiod)
        if (a.ring() != ring) throw InputError("quotients mix rings");
    QPairState s = QPairState::init(cycle.front());
    for (std::size_t i = 1; i < cycle.size(); ++i) s = qpair_step(s, cycle[i]);
    if (cycle.front().ring() != ring) throw InputError("quotients mix rings");
    // w = (w p_{k-1} + p_{k-2}) / (w q_{k-1} + q_{k-2})
    if (s.q_cur.is_zero()) throw InvariantViolation("q_{k-1} = 0 for the cycle; impossible for a discrete ring");
    RingElement A = s.q_cur;
    RingElement B = s.q_prev - s.p_cur;
    RingElement C = -s.p_prev;
    if (preperiod.empty()) return {A, B, C};
    QPairState t = QPairState::init(preperiod.front());
    for (std::size_t i = 1; i < preperiod.size(); ++i) t = qpair_step(t, preperiod[i]);
    // w = (P_{m-2} - z Q_{m-2}) / (z Q_{m-1} - P_{m-1}) = (u0 + u1 z) / (v0 + v1 z)
    const RingElement u0 = t.p_prev, u1 = -t.q_prev, v0 = -t.p_cur, v1 = t.q_cur;
    const RingElement two(ring, 2);
    return {A * u1 * u1 + B * u1 * v1 + C * v1 * v1, two * A * u0 * u1 + B * (u0 * v1 + u1 * v0) + two * C * v0 * v1,
            A * u0 * u0 + B * u0 * v0 + C * v0 * v0};
}

SurdContextPtr surd_from_period(const std::vector<RingElement>& preperiod, const std::vector<RingElement>& cycle, Ring ring) {
    if (cycle.empty()) throw InputError("cycle must be nonempty");
    for (const auto* v : {&preperiod, &cycle})
        for (const auto& a : *v)
            if (a.ring() != ring) throw InputError("quotient " + a.to_string() + " is not in ring " + std::string(ring_name(ring)));
    for (std::size_t i = 1; i < preperiod.size(); ++i)
        if (preperiod[i].norm() <= 1) throw InputError("quotient a_" + std::to_string(i) + " must satisfy |a| > 1");
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if ((i > 0 || !preperiod.empty()) && cycle[i].norm() <= 1)
            throw InputError("cycle quotient " + cycle[i].to_string() + " must satisfy |a| > 1");

    QPairState s = QPairState::init(cycle.front());
    for (std::size_t i = 1; i < cycle.size(); ++i) s = qpair_step(s, cycle[i]);
    QuadraticTriple wp = period_polynomial({}, cycle);
    if (sqrt_in_field((wp.B * wp.B - RingElement(ring, 4) * wp.A * wp.C).to_field()))
        throw InputError("input stream corresponds to an element of K");

    // Of the two roots, the expansion's tail satisfies |q_{k-1} w + q_{k-2}| > 1;
    // the product of both values is +-1.
    const RingElement& Q = s.q_cur;
    const RingElement& Q1 = s.q_prev;
    std::optional<int> branch;
    SurdContextPtr wctx;
    for (unsigned bits = 64; bits <= kPullbackBitsCap && !branch; bits *= 2) {
        for (int br : {1, -1}) {
            auto probe = std::make_shared<const SurdContext>(wp.A, wp.B, wp.C, br);
            ComplexBox v = probe->root_box(bits) * Q.to_field().to_box(bits) + Q1.to_field().to_box(bits);
            if (v.abs_sq().lo > 1) {
                branch = br;
                wctx = probe;
                break;
            }
        }
    }
    if (!branch) throw InputError("cycle does not determine an expanding fixed point");
    if (preperiod.empty()) return wctx;

    QuadraticTriple zp = period_polynomial(preperiod, cycle);
    QPairState t = QPairState::init(preperiod.front());
    for (std::size_t i = 1; i < preperiod.size(); ++i) t = qpair_step(t, preperiod[i]);
    for (unsigned bits = 64; bits <= kPullbackBitsCap; bits *= 2) {
        ComplexBox w = wctx->root_box(bits);
        ComplexBox num = w * t.p_cur.to_field().to_box(bits) + t.p_prev.to_field().to_box(bits);
        ComplexBox den = w * t.q_cur.to_field().to_box(bits) + t.q_prev.to_field().to_box(bits);
        if (den.contains_zero()) continue;
        ComplexBox z = (num * inverse(den)).round_outward(bits);
        Rational pad = z.width() + Rational(1) / Rational(Integer(1) << bits);
        ComplexBox bracket(z.re.lo - pad, z.re.hi + pad, z.im.lo - pad, z.im.hi + pad);
        try {
            return std::make_shared<const SurdContext>(zp.A, zp.B, zp.C, bracket);
        } catch (const InputError&) {
        }
    }
    throw InvariantViolation("failed to isolate the pulled-back root");
}

bool contexts_equivalent(const SurdContext& x, const SurdContext& y) {
    if (x.ring() != y.ring()) return false;
    if (!(x.a() * y.b() == y.a() * x.b() && x.a() * y.c() == y.a() * x.c() && x.b() * y.c() == y.b() * x.c())) return false;
    for (unsigned bits = 64; bits <= kPullbackBitsCap; bits *= 2) {
        ComplexBox bx = x.root_box(bits);
        bool same = intersects(bx, y.root_box(bits));
        bool other = intersects(bx, y.other_root_box(bits));
        if (same != other) return same;
    }
    return false;
}

std::optional<std::pair<std::size_t, std::size_t>> first_repeat(const std::vector<SurdElement>& zs) {
    std::unordered_map<SurdElement, std::size_t, SurdElementHash> seen;
    for (std::size_t n = 0; n < zs.size(); ++n) {
        auto [it, inserted] = seen.emplace(zs[n], n);
        if (!inserted) return std::make_pair(it->second, n);
    }
    return std::nullopt;
}

}  // namespace ccf
