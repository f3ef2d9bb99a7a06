#include "ccf/surd.hpp"

#include "ccf/error.hpp"

#include <functional>

namespace ccf {

namespace {

constexpr unsigned kSelectorBitsCap = 1U << 14;
constexpr unsigned kSignBitsCap = 1U << 20;

// i * sqrt(D) as an element of K.
FieldElement i_sqrt_d(Ring r) {
    if (info(r).half) return {r, -1, 2};
    return {r, 0, 1};
}

// Principal square root of a K element, as a box.
ComplexBox sqrt_box(const FieldElement& d, unsigned bits) {
    const Rational e = d.re();
    const Rational f = d.eta();
    const Rational D(info(d.ring()).radicand);
    if (f == 0) {
        if (e >= 0) return {sqrt(Interval(e), bits), Interval(0)};
        return {Interval(0), sqrt(Interval(Rational(-e)), bits)};
    }
    Interval modulus = sqrt(Interval(e * e + D * f * f), bits);
    Interval re = sqrt((modulus + Interval(e)) / Interval(2), bits);
    Interval im = sqrt((modulus - Interval(e)) / Interval(2), bits);
    if (f < 0) im = -im;
    return {re, im};
}

}  // namespace

RootSelector parse_root_selector(std::string_view text) {
    if (text == "+im") return RootSelector::PlusIm;
    if (text == "-im") return RootSelector::MinusIm;
    if (text == "+re") return RootSelector::PlusRe;
    if (text == "-re") return RootSelector::MinusRe;
    if (text == "+abs") return RootSelector::PlusAbs;
    if (text == "-abs") return RootSelector::MinusAbs;
    throw InputError("unknown root selector '" + std::string(text) + "' (expected +im, -im, +re, -re, +abs or -abs)");
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
    // (g + h i sqrt D)^2 = g^2 - D h^2 + 2 g h i sqrt D
    const Ring r = x.ring();
    const Rational e = x.re();
    const Rational f = x.eta();
    const Rational D(info(r).radicand);
    Rational g, h;
    if (f == 0) {
        if (exact_sqrt(e, g)) return FieldElement::from_coords(r, g, 0);
        if (exact_sqrt(-e / D, h)) return FieldElement::from_coords(r, 0, h);
        return std::nullopt;
    }
    Rational m;
    if (!exact_sqrt(e * e + D * f * f, m)) return std::nullopt;
    if (!exact_sqrt((e + m) / 2, g) || g == 0) return std::nullopt;
    h = f / (2 * g);
    return FieldElement::from_coords(r, g, h);
}

// ---- SurdContext ----

SurdContext::SurdContext(RingElement a, RingElement b, RingElement c, const ComplexBox& bracket)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    check_irreducible();
    for (unsigned bits = 32; bits <= kSelectorBitsCap; bits *= 2) {
        ComplexBox plus = root_box(bits, 1);
        ComplexBox minus = root_box(bits, -1);
        bool in_plus = bracket.contains(plus);
        bool in_minus = bracket.contains(minus);
        bool touch_plus = intersects(bracket, plus);
        bool touch_minus = intersects(bracket, minus);
        if (in_plus && !touch_minus) {
            branch_ = 1;
            bracket_ = bracket;
            return;
        }
        if (in_minus && !touch_plus) {
            branch_ = -1;
            bracket_ = bracket;
            return;
        }
        if (!touch_plus && !touch_minus) break;
    }
    throw InputError("bracket " + bracket.to_string() + " does not isolate exactly one root");
}

SurdContext::SurdContext(RingElement a, RingElement b, RingElement c, RootSelector selector)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    check_irreducible();
    for (unsigned bits = 32; bits <= kSelectorBitsCap; bits *= 2) {
        ComplexBox p = root_box(bits, 1);
        ComplexBox m = root_box(bits, -1);
        // +1 when the '+' branch wins the selector, -1 when '-' wins, 0 undecided
        auto pick = [](const Interval& x, const Interval& y, bool larger) {
            if (x.lo > y.hi) return larger ? 1 : -1;
            if (y.lo > x.hi) return larger ? -1 : 1;
            return 0;
        };
        int choice = 0;
        switch (selector) {
            case RootSelector::PlusIm: choice = pick(p.im, m.im, true); break;
            case RootSelector::MinusIm: choice = pick(p.im, m.im, false); break;
            case RootSelector::PlusRe: choice = pick(p.re, m.re, true); break;
            case RootSelector::MinusRe: choice = pick(p.re, m.re, false); break;
            case RootSelector::PlusAbs: choice = pick(p.abs_sq(), m.abs_sq(), true); break;
            case RootSelector::MinusAbs: choice = pick(p.abs_sq(), m.abs_sq(), false); break;
        }
        if (choice != 0 && !intersects(p, m)) {
            branch_ = choice;
            bracket_ = choice > 0 ? p : m;
            return;
        }
    }
    throw InputError("root selector cannot distinguish the two roots; pass an explicit bracket");
}

SurdContext::SurdContext(RingElement a, RingElement b, RingElement c, int branch)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), branch_(branch < 0 ? -1 : 1) {
    check_irreducible();
    for (unsigned bits = 32; bits <= kSelectorBitsCap; bits *= 2) {
        bracket_ = root_box(bits, branch_);
        if (!intersects(bracket_, root_box(bits, -branch_))) return;
    }
    throw InvariantViolation("roots of an irreducible quadratic failed to separate");
}

void SurdContext::check_irreducible() const {
    if (a_.ring() != b_.ring() || a_.ring() != c_.ring()) throw InputError("minimal polynomial mixes rings");
    if (a_.is_zero()) throw InputError("leading coefficient a must be nonzero");
    if (sqrt_in_field(discriminant().to_field()))
        throw InputError("polynomial is reducible over K (discriminant " + discriminant().to_string() +
                         " is a square); its roots lie in K");
}

ComplexBox SurdContext::root_box(unsigned bits, int branch) const {
    ComplexBox s = sqrt_box(discriminant().to_field(), bits);
    if (branch < 0) s = -s;
    ComplexBox num = (-b_).to_field().to_box(bits) + s;
    FieldElement inv2a = (RingElement(ring(), 2) * a_).to_field().inverse();
    return num * inv2a.to_box(bits);
}

ComplexBox refine_bracket(const SurdContext& ctx, const Rational& target_width) {
    if (target_width <= 0) throw InputError("target width must be positive");
    for (unsigned bits = 64;; bits *= 2) {
        ComplexBox b = ctx.root_box(bits);
        if (b.width() <= target_width) return b;
        if (bits > kSignBitsCap) throw InvariantViolation("refine_bracket failed to converge");
    }
}

// ---- SurdElement ----

SurdElement::SurdElement(SurdContextPtr ctx, FieldElement alpha, FieldElement beta)
    : ctx_(std::move(ctx)), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

SurdElement SurdElement::z(SurdContextPtr ctx) {
    Ring r = ctx->ring();
    return {std::move(ctx), FieldElement(r, 0), FieldElement(r, 1)};
}

SurdElement SurdElement::constant(SurdContextPtr ctx, const FieldElement& value) {
    Ring r = ctx->ring();
    return {std::move(ctx), value, FieldElement(r, 0)};
}

SurdElement& SurdElement::operator+=(const SurdElement& o) {
    alpha_ += o.alpha_;
    beta_ += o.beta_;
    return *this;
}

SurdElement& SurdElement::operator-=(const SurdElement& o) {
    alpha_ -= o.alpha_;
    beta_ -= o.beta_;
    return *this;
}

SurdElement& SurdElement::operator*=(const SurdElement& o) {
    // z^2 = -(b z + c)/a
    const FieldElement a = ctx_->a().to_field();
    const FieldElement b_over_a = ctx_->b().to_field() / a;
    const FieldElement c_over_a = ctx_->c().to_field() / a;
    FieldElement bb = beta_ * o.beta_;
    FieldElement alpha = alpha_ * o.alpha_ - bb * c_over_a;
    FieldElement beta = alpha_ * o.beta_ + beta_ * o.alpha_ - bb * b_over_a;
    alpha_ = std::move(alpha);
    beta_ = std::move(beta);
    return *this;
}

SurdElement SurdElement::algebraic_conjugate() const {
    // z' = -b/a - z
    FieldElement b_over_a = ctx_->b().to_field() / ctx_->a().to_field();
    return {ctx_, alpha_ - beta_ * b_over_a, -beta_};
}

FieldElement SurdElement::norm() const {
    const FieldElement a = ctx_->a().to_field();
    return alpha_ * alpha_ - alpha_ * beta_ * (ctx_->b().to_field() / a) + beta_ * beta_ * (ctx_->c().to_field() / a);
}

SurdElement SurdElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in quotient algebra");
    FieldElement n = norm();
    if (n.is_zero()) throw std::domain_error("division by zero in quotient algebra");
    FieldElement ninv = n.inverse();
    SurdElement c = algebraic_conjugate();
    return {ctx_, c.alpha_ * ninv, c.beta_ * ninv};
}

std::pair<FieldElement, FieldElement> SurdElement::minimal_polynomial() const {
    if (beta_.is_zero()) throw std::domain_error("minimal_polynomial of an element of K");
    // a w^2 + (-2aA + bB) w + (aA^2 - bAB + cB^2) = 0 for w = A + B z
    const FieldElement a = ctx_->a().to_field();
    const FieldElement b = ctx_->b().to_field();
    const FieldElement c = ctx_->c().to_field();
    const FieldElement& A = alpha_;
    const FieldElement& B = beta_;
    FieldElement two(a.ring(), 2);
    FieldElement p = (b * B - two * a * A) / a;
    FieldElement q = (a * A * A - b * A * B + c * B * B) / a;
    return {p, q};
}

ComplexBox SurdElement::to_box(const ComplexBox& zbox, unsigned bits) const {
    if (beta_.is_zero()) return alpha_.to_box(bits);
    return alpha_.to_box(bits) + beta_.to_box(bits) * zbox;
}

std::string SurdElement::to_string() const {
    return "(" + ccf::to_string(alpha_.u()) + "," + ccf::to_string(alpha_.v()) + ")+(" + ccf::to_string(beta_.u()) +
           "," + ccf::to_string(beta_.v()) + ")*z@" + std::string(ring_name(ring()));
}

SurdElement surd_add(const SurdElement& u, const SurdElement& v) { return u + v; }
SurdElement surd_mul(const SurdElement& u, const SurdElement& v) { return u * v; }
SurdElement surd_inv(const SurdElement& u) { return u.inverse(); }
bool surd_eq(const SurdElement& u, const SurdElement& v) { return u == v; }

std::size_t SurdElementHash::operator()(const SurdElement& e) const {
    std::hash<std::string> h;
    std::size_t acc = 0;
    for (const Rational* q : {&e.alpha().u(), &e.alpha().v(), &e.beta().u(), &e.beta().v()}) {
        acc = acc * 1000003u ^ h(q->get_num().get_str(16));
        acc = acc * 1000003u ^ h(q->get_den().get_str(16));
    }
    return acc;
}

// ---- SurdEvaluator ----

SurdEvaluator::SurdEvaluator(SurdContextPtr ctx, unsigned initial_bits)
    : ctx_(std::move(ctx)), initial_bits_(initial_bits) {}

const ComplexBox& SurdEvaluator::zbox(unsigned bits) {
    auto it = cache_.find(bits);
    if (it != cache_.end()) return it->second;
    if (bits > max_bits_) max_bits_ = bits;
    return cache_.emplace(bits, ctx_->root_box(bits)).first->second;
}

ComplexBox SurdEvaluator::box_at(const SurdElement& w, unsigned bits) { return w.to_box(zbox(bits), bits); }

ComplexBox SurdEvaluator::box(const SurdElement& w, const Rational& target) {
    for (unsigned bits = initial_bits_;; bits *= 2) {
        ComplexBox b = box_at(w, bits);
        if (b.width() <= target) return b;
        if (bits > kSignBitsCap) throw InvariantViolation("surd enclosure failed to converge");
    }
}

int SurdEvaluator::sign_re(const SurdElement& w) {
    if (w.in_field()) return sign(w.alpha().re());
    // Re(w) = 0 forces conj(m) = m(-X) for the minimal polynomial m of w. If
    // that coefficient test fails, Re(w) != 0 and refinement terminates.
    // If it passes, exactly one of Re(w) = 0 and Im(w) = -Im(p)/2 holds.
    auto [p, q] = w.minimal_polynomial();
    const bool degenerate = p.conj() == -p && q.conj() == q;
    for (unsigned bits = initial_bits_; bits <= kSignBitsCap; bits *= 2) {
        ComplexBox b = box_at(w, bits);
        if (int s = b.re.certain_sign(); s != 0) return s;
        if (degenerate) {
            Interval target = Interval(Rational(-p.eta() / 2)) * sqrt_radicand(w.ring(), bits);
            if (!intersects(b.im, target)) return 0;
        }
    }
    throw InvariantViolation("sign_re failed to decide; context is inconsistent");
}

int SurdEvaluator::sign_im(const SurdElement& w) {
    // Im(w) = Re(-i sqrt(D) w) / sqrt(D)
    SurdElement rotated(w.context(), -(i_sqrt_d(w.ring()) * w.alpha()), -(i_sqrt_d(w.ring()) * w.beta()));
    return sign_re(rotated);
}

}  // namespace ccf
